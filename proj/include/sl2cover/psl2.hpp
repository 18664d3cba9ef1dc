#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

#include "sl2cover/errors.hpp"
#include "sl2cover/lift.hpp"

namespace sl2cover {

/// Element of PSL2(R), stored as the sign-normalized determinant-1
/// representative: entries are divided by sqrt(det), and the whole matrix is
/// negated if needed so that the first entry of (a, b, c, d) exceeding a small
/// threshold is positive. This fixes a canonical representative of {+M, -M},
/// which equality tests and hashing rely on.
class ProjMat {
public:
    ProjMat() : a_(1), b_(0), c_(0), d_(1) {}

    ProjMat(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
            throw InvalidMatrix("ProjMat: non-finite entry");
        const double det = a_ * d_ - b_ * c_;
        if (!(det > 1e-12))
            throw InvalidMatrix("ProjMat: determinant must be positive (got " +
                                std::to_string(det) + ")");
        const double s = 1.0 / std::sqrt(det);
        a_ *= s; b_ *= s; c_ *= s; d_ *= s;
        for (double e : {a_, b_, c_, d_}) {
            if (std::abs(e) > 1e-12) {
                if (e < 0.0) { a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_; }
                break;
            }
        }
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    /// |a + d| of the determinant-1 representative.
    double trace_bar() const { return std::abs(a_ + d_); }

    bool is_identity(double eps = 1e-12) const {
        return std::abs(a_ - 1.0) <= eps && std::abs(b_) <= eps && std::abs(c_) <= eps &&
               std::abs(d_ - 1.0) <= eps;
    }

private:
    double a_, b_, c_, d_;
};

inline ProjMat mul(const ProjMat& m, const ProjMat& n) {
    return {m.a() * n.a() + m.b() * n.c(), m.a() * n.b() + m.b() * n.d(),
            m.c() * n.a() + m.d() * n.c(), m.c() * n.b() + m.d() * n.d()};
}

inline ProjMat inv(const ProjMat& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

inline double trace_bar(const ProjMat& m) { return m.trace_bar(); }

/// Largest entrywise distance between the normalized representatives.
inline double mat_dist(const ProjMat& m, const ProjMat& n) {
    return std::max(std::max(std::abs(m.a() - n.a()), std::abs(m.b() - n.b())),
                    std::max(std::abs(m.c() - n.c()), std::abs(m.d() - n.d())));
}

/// rho_theta = [cos -sin; sin cos], the stabilizer-of-i circle K.
inline ProjMat rotation(double theta) {
    return {std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)};
}

/// a_lambda = diag(lambda, 1/lambda), lambda > 0.
inline ProjMat diagonal(double lambda) {
    if (!(lambda > 0.0)) throw InvalidMatrix("diagonal: lambda must be positive");
    return {lambda, 0.0, 0.0, 1.0 / lambda};
}

/// u_x = [1 x; 0 1].
inline ProjMat unipotent(double x) { return {1.0, x, 0.0, 1.0}; }

/// Unique factorization M = rho_theta a_lambda u_x with theta in [0, pi),
/// lambda > 0.
struct IwasawaTriple {
    double theta = 0.0;
    double lambda = 1.0;
    double x = 0.0;
};

inline IwasawaTriple iwasawa(const ProjMat& m) {
    // The first column (a, c) must equal lambda (cos theta, sin theta):
    // peel the rotation off and read the upper-triangular remainder.
    double theta = std::atan2(m.c(), m.a());
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta = 0.0;
    ProjMat an = mul(inv(rotation(theta)), m);
    double lambda = an.a(), x_entry = an.b();
    if (lambda < 0.0) { lambda = -lambda; x_entry = -x_entry; }
    return {theta, lambda, x_entry / lambda};
}

inline ProjMat iwasawa_recompose(const IwasawaTriple& t) {
    return mul(rotation(t.theta), mul(diagonal(t.lambda), unipotent(t.x)));
}

/// Conjugacy class of an element of PSL2(R): identity, a_lambda with a unique
/// lambda > 1, one of u_{+1} / u_{-1}, or rho_theta with a unique theta in
/// (0, pi). `conjugator` P satisfies P rep P^-1 = source.
struct Psl2ClassRep {
    enum class Kind { Identity, Hyperbolic, ParabolicPlus, ParabolicMinus, Elliptic };
    Kind kind = Kind::Identity;
    double lambda = 1.0;  // hyperbolic parameter, > 1
    double theta = 0.0;   // elliptic parameter, in (0, pi)
    ProjMat conjugator;

    ProjMat representative() const {
        switch (kind) {
            case Kind::Identity: return {};
            case Kind::Hyperbolic: return diagonal(lambda);
            case Kind::ParabolicPlus: return unipotent(1.0);
            case Kind::ParabolicMinus: return unipotent(-1.0);
            case Kind::Elliptic: return rotation(theta);
        }
        return {};
    }
};

inline const char* to_string(Psl2ClassRep::Kind k) {
    using K = Psl2ClassRep::Kind;
    switch (k) {
        case K::Identity: return "Identity";
        case K::Hyperbolic: return "Hyperbolic";
        case K::ParabolicPlus: return "ParabolicPlus";
        case K::ParabolicMinus: return "ParabolicMinus";
        case K::Elliptic: return "Elliptic";
    }
    return "?";
}

namespace detail {

/// Assemble the column pair (u, v) into an SL2 matrix [u | v]; the frame
/// determinant must be positive (the constructor rescales it to 1).
inline ProjMat frame_to_sl2(double u1, double u2, double v1, double v2) {
    return {u1, v1, u2, v2};
}

}  // namespace detail

/// Classify M by its trace: > 2 hyperbolic, = 2 (within eps_parab) parabolic
/// or identity, < 2 elliptic. The conjugator is assembled from eigenvectors;
/// the parabolic sign (u_1 vs u_{-1}) is the sign of the off-diagonal entry
/// after reduction by an orthonormal eigenbasis, which conjugation by
/// diag(eps, 1/eps) cannot flip.
inline Psl2ClassRep class_of(const ProjMat& m, double eps_parab = 1e-9) {
    Psl2ClassRep r;
    if (m.is_identity(1e-12)) return r;

    const double t_signed = m.a() + m.d();
    const double tr = std::abs(t_signed);

    if (tr > 2.0 + eps_parab) {
        // two real eigenvalues mu > 1 > 1/mu of the representative with trace > 2
        const double sign = (t_signed >= 0.0) ? 1.0 : -1.0;
        const double a = sign * m.a(), b = sign * m.b(), c = sign * m.c(), d = sign * m.d();
        const double t = a + d;
        const double mu = 0.5 * (t + std::sqrt(t * t - 4.0));
        // eigenvector rows of (S - mu I): pick the better-conditioned one
        const auto eigvec = [&](double ev, double& v1, double& v2) {
            const double r1 = std::hypot(a - ev, b), r2 = std::hypot(c, d - ev);
            if (r1 >= r2) { v1 = -b; v2 = a - ev; }
            else { v1 = -(d - ev); v2 = c; }
            const double n = std::hypot(v1, v2);
            v1 /= n; v2 /= n;
        };
        double p1, p2, q1, q2;
        eigvec(mu, p1, p2);        // expanding line
        eigvec(1.0 / mu, q1, q2);  // contracting line
        if (p1 * q2 - p2 * q1 < 0.0) { q1 = -q1; q2 = -q2; }
        r.kind = Psl2ClassRep::Kind::Hyperbolic;
        r.lambda = mu;
        r.conjugator = detail::frame_to_sl2(p1, p2, q1, q2);
        return r;
    }

    if (tr >= 2.0 - eps_parab) {
        // repeated eigenvalue with a one-dimensional eigenspace
        const double sign = (t_signed >= 0.0) ? 1.0 : -1.0;
        const double a = sign * m.a(), b = sign * m.b(), c = sign * m.c(), d = sign * m.d();
        double v1, v2;
        {
            const double r1 = std::hypot(a - 1.0, b), r2 = std::hypot(c, d - 1.0);
            if (r1 >= r2) { v1 = -b; v2 = a - 1.0; }
            else { v1 = -(d - 1.0); v2 = c; }
            const double n = std::hypot(v1, v2);
            v1 /= n; v2 /= n;
        }
        // rotate the eigenvector to e_1; the reduced matrix is [1 x; 0 1]
        const ProjMat basis(v1, -v2, v2, v1);  // orthonormal, det 1
        const ProjMat reduced = mul(inv(basis), mul(m, basis));
        const double x = reduced.b();
        const double eps = 1.0 / std::sqrt(std::abs(x));
        r.kind = (x > 0.0) ? Psl2ClassRep::Kind::ParabolicPlus
                           : Psl2ClassRep::Kind::ParabolicMinus;
        r.conjugator = mul(basis, ProjMat(1.0 / eps, 0.0, 0.0, eps));
        return r;
    }

    // complex eigenvalues exp(+-i theta1); the orientation of the real
    // eigenframe decides between theta1 and pi - theta1
    const double t = t_signed;
    const double theta1 = std::acos(std::clamp(t / 2.0, -1.0, 1.0));
    const std::complex<double> muc(t / 2.0, std::sin(theta1));
    std::complex<double> z, w;
    {
        const std::complex<double> am(m.a(), 0.0), bm(m.b(), 0.0), cm(m.c(), 0.0),
            dm(m.d(), 0.0);
        const std::complex<double> r1a = am - muc, r2d = dm - muc;
        if (std::abs(r1a) + std::abs(bm) >= std::abs(cm) + std::abs(r2d)) {
            z = -bm; w = r1a;
        } else {
            z = -r2d; w = cm;
        }
    }
    const double re1 = z.real(), re2 = w.real();
    const double im1 = z.imag(), im2 = w.imag();
    const double frame_det = im1 * re2 - im2 * re1;  // det [Im v | Re v]
    if (frame_det > 0.0) {
        r.kind = Psl2ClassRep::Kind::Elliptic;
        r.theta = theta1;
        r.conjugator = detail::frame_to_sl2(im1, im2, re1, re2);
    } else {
        r.kind = Psl2ClassRep::Kind::Elliptic;
        r.theta = std::numbers::pi - theta1;
        r.conjugator = detail::frame_to_sl2(-im1, -im2, re1, re2);
    }
    return r;
}

/// Closed-form canonical lift of the circle map of M.
///
/// The circle R/Z is identified with the real projective line by sending x to
/// the line spanned by (cos pi x, sin pi x); M acts on lines. The canonical
/// lift is the unique increasing lift with value at 0 in [0, 1): following
/// the interval construction, the value at x0 in [0, 1) is the unique
/// representative of the image angle inside [lift(0), lift(0) + 1).
inline Lift canonical_lift_matrix(const ProjMat& m) {
    const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const auto angle01 = [a, b, c, d](double x0) {
        const double co = std::cos(std::numbers::pi * x0);
        const double si = std::sin(std::numbers::pi * x0);
        double r = std::atan2(c * co + d * si, a * co + b * si) / std::numbers::pi;
        r -= std::floor(r);
        if (r >= 1.0) r = 0.0;
        return r;
    };
    double base = angle01(0.0);
    // Matrices fixing the 0-line (the normal forms a_lambda, u_x, Id) sit on
    // the wrap boundary of the unit interval, where rounding noise can flip
    // the value at 0 between 0 and 1 - eps and shift the whole section by a
    // deck translation. Snapping a narrow collar below 1 down to 0 picks one
    // side consistently.
    if (1.0 - base < 1e-7) base = 0.0;
    return Lift::from_function([angle01, base](double x0) {
        const double r = angle01(x0);
        return (r < base) ? r + 1.0 : r;
    });
}

/// The induced self-map of the circle, packaged with its canonical lift.
struct CircleMap {
    Lift lift;
};

inline CircleMap circle_map(const ProjMat& m) { return {canonical_lift_matrix(m)}; }

/// Canonical lift of an arbitrary orientation-preserving circle map given as
/// an evaluator into [0, 1). The sampled values are unwrapped by adding the
/// fractional forward gaps, which is unambiguous as long as the map moves
/// less than a full turn between samples.
inline Lift canonical_lift_generic(const std::function<double(double)>& phi,
                                   int sample_count = 4096) {
    if (sample_count < 2)
        throw PreconditionViolated("canonical_lift_generic: need at least 2 samples");
    std::vector<double> table(static_cast<std::size_t>(sample_count));
    double prev_raw = phi(0.0);
    prev_raw -= std::floor(prev_raw);
    table[0] = prev_raw;  // value at 0 lands in [0, 1)
    for (int i = 1; i < sample_count; ++i) {
        double raw = phi(static_cast<double>(i) / sample_count);
        raw -= std::floor(raw);
        double gap = raw - prev_raw;
        gap -= std::floor(gap);
        table[i] = table[i - 1] + gap;
        prev_raw = raw;
    }
    try {
        return Lift::from_samples(std::move(table));
    } catch (const InvalidLift&) {
        throw InvalidLift("canonical_lift_generic: input is not an increasing circle map");
    }
}

/// Parameter x = b - (a-1)(d-1)/c of the shear factored off in the lifting of
/// Zhang's section, computed from the representative with c > 0.
inline double zhang_shear_parameter(const ProjMat& m) {
    double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (c == 0.0) throw PreconditionViolated("zhang_shear_parameter: c must be nonzero");
    if (c < 0.0) { a = -a; b = -b; c = -c; d = -d; }
    return b - (a - 1.0) * (d - 1.0) / c;
}

/// Zhang's section of the covering: for M with a real eigenspace, the unique
/// lift of its circle map fixing a point; otherwise factor M = M1 u_x with
/// x = b - (a-1)(d-1)/c (both factors then have real eigenspaces) and compose
/// the two fixed-point lifts.
inline Lift zhang_lift(const ProjMat& m) {
    // the recursion lands on exactly-parabolic products; the small band below
    // 2 keeps rounding from bouncing them back into the general branch
    const double tr = m.trace_bar();
    if (tr >= 2.0 - 1e-9 || m.c() == 0.0) {
        // fixed point of the circle map = the (dominant) eigenline
        const double sign = (m.a() + m.d() >= 0.0) ? 1.0 : -1.0;
        const double a = sign * m.a(), b = sign * m.b(), c = sign * m.c(), d = sign * m.d();
        const double t = a + d;
        const double disc = std::max(t * t - 4.0, 0.0);
        const double ev = 0.5 * (t + std::sqrt(disc));
        double v1, v2;
        const double r1 = std::hypot(a - ev, b), r2 = std::hypot(c, d - ev);
        if (r1 >= r2) { v1 = -b; v2 = a - ev; }
        else { v1 = -(d - ev); v2 = c; }
        double xs = std::atan2(v2, v1) / std::numbers::pi;
        xs -= std::floor(xs);
        const Lift canonical = canonical_lift_matrix(m);
        const double shift = std::round(canonical(xs) - xs);
        return compose(translation(-shift), canonical);
    }
    const double x = zhang_shear_parameter(m);
    const ProjMat m1 = mul(m, inv(unipotent(x)));
    return compose(zhang_lift(m1), zhang_lift(unipotent(x)));
}

/// Orientation sanity check: the canonical lift of rho_theta must be the
/// translation by +theta/pi. A failure means the projective-line chart has
/// the wrong sign convention, which would silently swap the two parabolic
/// classes; callers treat it as fatal.
inline bool convention_check(double tol = 1e-9) {
    for (double theta : {0.1, 1.0, 3.0}) {
        const Lift lifted = canonical_lift_matrix(rotation(theta));
        if (dist_sup(lifted, translation(theta / std::numbers::pi), 256) > tol) return false;
    }
    return true;
}

}  // namespace sl2cover
