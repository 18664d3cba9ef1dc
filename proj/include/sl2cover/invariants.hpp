#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "sl2cover/errors.hpp"
#include "sl2cover/lift.hpp"

namespace sl2cover {

/// Element of R-sharp, the quotient of R collapsing each open interval
/// (n, n+1) to a single point while keeping the integers. Values here are
/// restricted to the non-negative range, which is where lengths live.
/// R-sharp carries no arithmetic on purpose.
struct RSharp {
    enum class Tag { Point, Interval };
    Tag tag = Tag::Point;
    int n = 0;

    static RSharp point(int n) { return {Tag::Point, n}; }
    static RSharp interval(int n) { return {Tag::Interval, n}; }

    friend bool operator==(const RSharp&, const RSharp&) = default;

    std::string str() const {
        return tag == Tag::Point ? "[" + std::to_string(n) + "]"
                                 : "(" + std::to_string(n) + "," + std::to_string(n + 1) + ")";
    }
};

/// Sign behavior of the displacement x -> alpha(x) - x over one period.
enum class DirectionType {
    Forward,       // displacement > 0 everywhere
    SemiForward,   // >= 0 with a zero (a fixed point)
    Alternating,   // changes sign
    SemiBackward,  // <= 0 with a zero
    Backward,      // < 0 everywhere
    Identity,
};

inline const char* to_string(DirectionType d) {
    switch (d) {
        case DirectionType::Forward: return "Forward";
        case DirectionType::SemiForward: return "SemiForward";
        case DirectionType::Alternating: return "Alternating";
        case DirectionType::SemiBackward: return "SemiBackward";
        case DirectionType::Backward: return "Backward";
        case DirectionType::Identity: return "Identity";
    }
    return "?";
}

/// Extrema of the displacement over [0, 1] (one full period).
struct DisplacementProfile {
    double min_disp = 0.0;
    double max_disp = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
};

namespace detail {

/// Golden-section refinement of an extremum of f bracketed by [lo, hi].
/// `sign` +1 maximizes, -1 minimizes.
template <typename F>
std::pair<double, double> golden_refine(F&& f, double lo, double hi, int sign,
                                        double cell = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = sign * f(x1), f2 = sign * f(x2);
    while (b - a > cell) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = sign * f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = sign * f(x1);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace detail

/// Min and max of alpha(x) - x over [0, 1], located on a grid and refined by
/// golden section in the bracketing cells.
inline DisplacementProfile displacement_profile(const Lift& alpha, int grid = 4096) {
    if (grid < 64) throw PreconditionViolated("displacement_profile: grid must be >= 64");
    const auto disp = [&alpha](double x) { return alpha(x) - x; };

    DisplacementProfile p;
    int imin = 0, imax = 0;
    p.min_disp = p.max_disp = disp(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid);
        const double d = disp(x);
        if (d < p.min_disp) { p.min_disp = d; imin = i; }
        if (d > p.max_disp) { p.max_disp = d; imax = i; }
    }
    const auto cell = [grid](int i, int off) {
        return std::clamp(static_cast<double>(i + off) / static_cast<double>(grid), 0.0, 1.0);
    };
    auto [xmin, dmin] = detail::golden_refine(disp, cell(imin, -1), cell(imin, +1), -1);
    auto [xmax, dmax] = detail::golden_refine(disp, cell(imax, -1), cell(imax, +1), +1);
    p.argmin = xmin;
    p.argmax = xmax;
    p.min_disp = std::min(p.min_disp, dmin);
    p.max_disp = std::max(p.max_disp, dmax);
    return p;
}

/// The length ell(alpha) = sup over one period of |alpha(t) - t|.
inline double length(const Lift& alpha, int grid = 4096) {
    const auto p = displacement_profile(alpha, grid);
    return std::max(std::abs(p.min_disp), std::abs(p.max_disp));
}

inline RSharp real_to_sharp(double x, double eps_int = 1e-6) {
    const double r = std::round(x);
    if (std::abs(x - r) <= eps_int) return RSharp::point(static_cast<int>(r));
    return RSharp::interval(static_cast<int>(std::floor(x)));
}

/// ell-sharp: the image of ell(alpha) in R-sharp, i.e. the pair
/// {floor(ell), ceil(ell)} encoded as a point or an open unit interval.
/// Numeric snap with tolerance eps_int; elements of the covering group get an
/// exact symbolic value from their classification instead.
inline RSharp length_sharp(const Lift& alpha, double eps_int = 1e-6, int grid = 4096) {
    if (eps_int <= 0) throw PreconditionViolated("length_sharp: eps_int must be positive");
    return real_to_sharp(length(alpha, grid), eps_int);
}

/// A point x* in [0, 1) with |alpha(x*) - x*| <= tol_fix, when one exists.
/// Sign changes of the displacement are bisected; tangential zeros (the
/// semi-forward/backward cases) are caught by refining the minimum of the
/// absolute displacement.
inline std::optional<double> fixed_point(const Lift& alpha, double tol_fix = 1e-9,
                                         int grid = 4096) {
    const auto disp = [&alpha](double x) { return alpha(x) - x; };
    double prev = disp(0.0);
    if (std::abs(prev) <= tol_fix) return 0.0;
    double best = std::abs(prev);
    int best_i = 0;
    for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid);
        const double d = disp(x);
        if (std::abs(d) <= tol_fix) return x;
        if ((d < 0.0) != (prev < 0.0)) {
            double lo = static_cast<double>(i - 1) / static_cast<double>(grid), hi = x;
            double dlo = prev;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = disp(mid);
                if (std::abs(dm) <= tol_fix) return mid;
                if ((dm < 0.0) == (dlo < 0.0)) { lo = mid; dlo = dm; }
                else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        if (std::abs(d) < best) { best = std::abs(d); best_i = i; }
        prev = d;
    }
    // no sign change: refine around the smallest |displacement|
    const double lo = std::max(0.0, (best_i - 1.0) / grid);
    const double hi = std::min(1.0, (best_i + 1.0) / grid);
    auto [x, d] = detail::golden_refine([&disp](double t) { return std::abs(disp(t)); },
                                        lo, hi, -1);
    if (std::abs(d) <= tol_fix) return x;
    return std::nullopt;
}

/// Direction type from the displacement extrema, with eps_zero deciding what
/// counts as a vanishing extremum. Displacements within eps_zero of zero at
/// both extrema classify as Identity.
inline DirectionType direction_type(const Lift& alpha, double eps_zero = 1e-9,
                                    int grid = 4096) {
    if (eps_zero <= 0) throw PreconditionViolated("direction_type: eps_zero must be positive");
    const auto p = displacement_profile(alpha, grid);
    const bool min_zero = std::abs(p.min_disp) <= eps_zero;
    const bool max_zero = std::abs(p.max_disp) <= eps_zero;
    if (min_zero && max_zero) return DirectionType::Identity;
    if (p.min_disp > eps_zero) return DirectionType::Forward;
    if (p.max_disp < -eps_zero) return DirectionType::Backward;
    if (min_zero) return DirectionType::SemiForward;
    if (max_zero) return DirectionType::SemiBackward;
    return DirectionType::Alternating;
}

/// Mirror of a direction type under inversion of the lift.
inline DirectionType mirror(DirectionType d) {
    switch (d) {
        case DirectionType::Forward: return DirectionType::Backward;
        case DirectionType::Backward: return DirectionType::Forward;
        case DirectionType::SemiForward: return DirectionType::SemiBackward;
        case DirectionType::SemiBackward: return DirectionType::SemiForward;
        default: return d;
    }
}

}  // namespace sl2cover
