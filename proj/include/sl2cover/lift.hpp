#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <utility>
#include <vector>

#include "sl2cover/errors.hpp"

namespace sl2cover {

/// A lift of an orientation-preserving circle homeomorphism: a strictly
/// increasing self-map of R commuting with x -> x + 1.
///
/// Two representations are supported. Closed-form lifts wrap a callable that
/// is consulted only on [0, 1); values elsewhere follow from the equivariance
/// alpha(x + n) = alpha(x) + n, which therefore holds exactly. Sampled lifts
/// hold a table of values on the uniform grid {i/M} of [0, 1) and interpolate
/// linearly in between (linear interpolation of a strictly increasing table is
/// strictly increasing, so monotonicity only needs checking at grid points).
///
/// Lifts are immutable values; every operation below is pure.
class Lift {
    struct raw_tag {};
    explicit Lift(raw_tag) {}

public:
    Lift() : fn_([](double x) { return x; }) {}

    /// Wrap a closed-form evaluator. `f` must be continuous, increasing on
    /// [0, 1], and satisfy f(1) = f(0) + 1 at the seam.
    static Lift from_function(std::function<double(double)> f) {
        Lift a{raw_tag{}};
        a.fn_ = std::move(f);
        a.probe_finite();
        return a;
    }

    /// Build a piecewise-linear lift from M >= 2 samples of alpha on {i/M}.
    static Lift from_samples(std::vector<double> samples) {
        if (samples.size() < 2) throw InvalidLift("from_samples: need at least 2 samples");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!std::isfinite(samples[i]))
                throw InvalidLift("from_samples: non-finite sample");
            if (i > 0 && samples[i] <= samples[i - 1])
                throw InvalidLift("from_samples: table is not strictly increasing");
        }
        if (samples.back() >= samples.front() + 1.0)
            throw InvalidLift("from_samples: table exceeds one period across the seam");
        Lift a{raw_tag{}};
        a.samples_ = std::make_shared<const std::vector<double>>(std::move(samples));
        return a;
    }

    /// Evaluate alpha(x). The argument is reduced to [0, 1) and the integer
    /// part restored afterwards, so equivariance is exact by construction.
    double operator()(double x) const {
        double n = std::floor(x);
        double x0 = x - n;
        if (x0 >= 1.0) {  // possible when x is a hair below an integer
            x0 -= 1.0;
            n += 1.0;
        }
        return base_eval(x0) + n;
    }

    bool is_sampled() const { return static_cast<bool>(samples_); }

    /// Number of table samples (0 for closed-form lifts).
    int sample_count() const {
        return samples_ ? static_cast<int>(samples_->size()) : 0;
    }

private:
    double base_eval(double x0) const {
        if (!samples_) return fn_(x0);
        const auto& s = *samples_;
        const auto m = static_cast<double>(s.size());
        double pos = x0 * m;
        auto i = static_cast<std::size_t>(pos);
        if (i >= s.size()) i = s.size() - 1;
        const double t = pos - static_cast<double>(i);
        const double lo = s[i];
        const double hi = (i + 1 < s.size()) ? s[i + 1] : s[0] + 1.0;
        return lo + t * (hi - lo);
    }

    void probe_finite() const {
        for (double x : {0.0, 0.31, 0.5, 0.77, 0.999}) {
            if (!std::isfinite(fn_(x)))
                throw InvalidLift("from_function: evaluator returned a non-finite value");
        }
    }

    std::function<double(double)> fn_;
    std::shared_ptr<const std::vector<double>> samples_;
};

/// The translation T_u : x -> x + u.
inline Lift translation(double u) {
    if (!std::isfinite(u)) throw InvalidLift("translation: u must be finite");
    return Lift::from_function([u](double x) { return x + u; });
}

inline Lift identity_lift() { return translation(0.0); }

/// x -> x + sin(2 pi q x) / (2 pi q) + c. Strictly increasing for every
/// q >= 1: the derivative 1 + cos(2 pi q x) vanishes only on a discrete set.
inline Lift sine_lift(int q, double c) {
    if (q < 1) throw InvalidLift("sine_lift: q must be >= 1");
    if (!std::isfinite(c)) throw InvalidLift("sine_lift: c must be finite");
    const double w = 2.0 * std::numbers::pi * static_cast<double>(q);
    return Lift::from_function([w, c](double x) { return x + std::sin(w * x) / w + c; });
}

/// Lift of the composite circle map: (compose(a, b))(x) = a(b(x)).
inline Lift compose(const Lift& alpha, const Lift& beta) {
    Lift r = Lift::from_function([alpha, beta](double x) { return alpha(beta(x)); });
    double prev = r(0.0);
    for (int i = 1; i <= 32; ++i) {
        const double cur = r(static_cast<double>(i) / 32.0);
        if (cur < prev) throw InvalidLift("compose: result is not increasing");
        prev = cur;
    }
    return r;
}

/// Inverse lift, evaluated by monotone bisection. The bracket is expanded in
/// unit steps (equivariance guarantees it closes) and then halved to well
/// below tol_inv.
inline Lift invert(const Lift& alpha) {
    return Lift::from_function([alpha](double y) {
        double lo = y - 1.0, hi = y + 1.0;
        int guard = 0;
        while (alpha(lo) > y) {
            lo -= 1.0;
            if (++guard > 64) throw ConvergenceFailure("invert: cannot bracket below");
        }
        guard = 0;
        while (alpha(hi) < y) {
            hi += 1.0;
            if (++guard > 64) throw ConvergenceFailure("invert: cannot bracket above");
        }
        for (int i = 0; i < 100 && hi - lo > 1e-14; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (alpha(mid) < y) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    });
}

/// alpha^n as a single lazy closure (n-fold pointwise iteration, not an
/// n-deep composition chain). Negative n goes through invert.
inline Lift power(const Lift& alpha, int n) {
    if (n == 0) return identity_lift();
    if (n < 0) return power(invert(alpha), -n);
    return Lift::from_function([alpha, n](double x) {
        double y = x;
        for (int i = 0; i < n; ++i) y = alpha(y);
        return y;
    });
}

/// sup_x |alpha(x) - beta(x)|, evaluated on a grid of [0, 1]. The difference
/// of two lifts has period 1, so the unit interval suffices.
inline double dist_sup(const Lift& alpha, const Lift& beta, int grid = 4096) {
    double best = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid);
        best = std::max(best, std::abs(alpha(x) - beta(x)));
    }
    return best;
}

struct LiftDiagnostics {
    bool monotone = true;
    double equivariance_residual = 0.0;  // max |alpha(x+1) - alpha(x) - 1| over the grid
    double worst_step = 0.0;             // most negative grid increment (0 when monotone)
    bool pass = true;
};

/// Membership test for lifts of orientation-preserving circle homeomorphisms:
/// grid monotonicity plus the equivariance residual.
inline LiftDiagnostics validate(const Lift& alpha, int grid = 4096, double tol_eq = 1e-9) {
    LiftDiagnostics d;
    double prev = alpha(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid);
        const double cur = alpha(x);
        if (cur < prev) {
            d.monotone = false;
            d.worst_step = std::min(d.worst_step, cur - prev);
        }
        prev = cur;
    }
    for (int i = 0; i < 16; ++i) {
        const double x = static_cast<double>(i) / 16.0;
        d.equivariance_residual =
            std::max(d.equivariance_residual, std::abs(alpha(x + 1.0) - alpha(x) - 1.0));
    }
    d.pass = d.monotone && d.equivariance_residual <= tol_eq;
    return d;
}

namespace detail {

inline void put_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint64_t get_u64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline void put_f64_le(std::ostream& os, double x) {
    std::uint64_t v;
    static_assert(sizeof v == sizeof x);
    std::memcpy(&v, &x, 8);
    put_u64_le(os, v);
}

inline double get_f64_le(std::istream& is) {
    const std::uint64_t v = get_u64_le(is);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

}  // namespace detail

/// Binary dump: count as little-endian u64, then count doubles alpha(i/count).
inline void write_lift_samples(std::ostream& os, const Lift& alpha, std::uint64_t count) {
    detail::put_u64_le(os, count);
    for (std::uint64_t i = 0; i < count; ++i)
        detail::put_f64_le(os, alpha(static_cast<double>(i) / static_cast<double>(count)));
}

inline Lift read_lift_samples(std::istream& is) {
    const std::uint64_t count = detail::get_u64_le(is);
    if (!is || count < 2 || count > (1ull << 30))
        throw InvalidLift("read_lift_samples: bad sample count");
    std::vector<double> samples(count);
    for (auto& s : samples) s = detail::get_f64_le(is);
    if (!is) throw InvalidLift("read_lift_samples: truncated stream");
    return Lift::from_samples(std::move(samples));
}

}  // namespace sl2cover
