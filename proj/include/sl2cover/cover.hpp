#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "sl2cover/errors.hpp"
#include "sl2cover/invariants.hpp"
#include "sl2cover/lift.hpp"
#include "sl2cover/psl2.hpp"
#include "sl2cover/quasimorphism.hpp"

namespace sl2cover {

/// Element of the universal covering group of PSL2(R), stored symbolically as
/// a projective matrix plus a deck shift: (m, k) denotes T_k composed with
/// the canonical lift of m. Exact integer bookkeeping of k is the backbone of
/// the classification; numerics only enter through the deck cocycle, which is
/// rounded to the nearest integer with a wide safety margin.
struct CoverElement {
    ProjMat m;
    int k = 0;
};

/// Realize the element as a lift of its circle map.
inline Lift realize(const CoverElement& e) {
    const Lift base = canonical_lift_matrix(e.m);
    const double shift = static_cast<double>(e.k);
    return Lift::from_function([base, shift](double x) { return base(x) + shift; });
}

namespace detail {

/// Integer deck cocycle of canonical lifts: lift(m1) o lift(m2) differs from
/// lift(m1 m2) by this central translation. Evaluating at the single point 0
/// determines it.
inline int deck_cocycle(const ProjMat& m1, const ProjMat& m2, const ProjMat& m12,
                        double cocycle_tol = 1e-6) {
    const Lift l1 = canonical_lift_matrix(m1);
    const Lift l2 = canonical_lift_matrix(m2);
    const Lift l12 = canonical_lift_matrix(m12);
    const double c = l1(l2(0.0)) - l12(0.0);
    const double r = std::round(c);
    if (std::abs(c - r) > cocycle_tol)
        throw CocycleNotIntegral("deck cocycle " + std::to_string(c) +
                                 " is not within tolerance of an integer");
    return static_cast<int>(r);
}

}  // namespace detail

inline CoverElement mul(const CoverElement& e1, const CoverElement& e2,
                        double cocycle_tol = 1e-6) {
    const ProjMat prod = mul(e1.m, e2.m);
    const int c = detail::deck_cocycle(e1.m, e2.m, prod, cocycle_tol);
    return {prod, e1.k + e2.k + c};
}

inline CoverElement inv(const CoverElement& e, double cocycle_tol = 1e-6) {
    const ProjMat mi = inv(e.m);
    const int c = detail::deck_cocycle(e.m, mi, ProjMat(), cocycle_tol);
    return {mi, -e.k - c};
}

inline CoverElement conjugate(const CoverElement& e, const CoverElement& g,
                              double cocycle_tol = 1e-6) {
    return mul(mul(g, e, cocycle_tol), inv(g, cocycle_tol), cocycle_tol);
}

inline bool cover_equal(const CoverElement& e1, const CoverElement& e2, double eps = 1e-9) {
    return e1.k == e2.k && mat_dist(e1.m, e2.m) <= eps;
}

/// Exact symbolic label of a conjugacy class of the covering group: a kind,
/// its continuous parameter, and the deck shift of the normal form.
struct ConjClassLabel {
    enum class Kind { Identity, Central, Elliptic, ParabolicPlus, ParabolicMinus, Hyperbolic };
    Kind kind = Kind::Identity;
    double theta = 0.0;   // elliptic parameter in (0, pi)
    double lambda = 1.0;  // hyperbolic parameter > 1
    int shift = 0;

    bool equal(const ConjClassLabel& o, double eps_param = 1e-9) const {
        if (kind != o.kind || shift != o.shift) return false;
        if (kind == Kind::Elliptic) return std::abs(theta - o.theta) <= eps_param;
        if (kind == Kind::Hyperbolic) return std::abs(lambda - o.lambda) <= eps_param;
        return true;
    }

    std::string str() const;
};

inline const char* to_string(ConjClassLabel::Kind k) {
    using K = ConjClassLabel::Kind;
    switch (k) {
        case K::Identity: return "Identity";
        case K::Central: return "Central";
        case K::Elliptic: return "Elliptic";
        case K::ParabolicPlus: return "ParabolicPlus";
        case K::ParabolicMinus: return "ParabolicMinus";
        case K::Hyperbolic: return "Hyperbolic";
    }
    return "?";
}

inline std::string ConjClassLabel::str() const {
    std::string s = to_string(kind);
    if (kind == Kind::Elliptic) s += "(theta=" + std::to_string(theta) + ")";
    if (kind == Kind::Hyperbolic) s += "(lambda=" + std::to_string(lambda) + ")";
    s += " shift " + std::to_string(shift);
    return s;
}

/// Classify e up to conjugacy. The projective part is brought to its normal
/// form R with class_of; conjugating e by the lifted conjugator then lands
/// exactly on (R, j) for a unique integer j, computed through the same
/// cocycle rounding as mul. The resulting label is a class function.
inline ConjClassLabel classify(const CoverElement& e, double cocycle_tol = 1e-6,
                               double eps_parab = 1e-9) {
    ConjClassLabel label;
    const Psl2ClassRep rep = class_of(e.m, eps_parab);

    if (rep.kind == Psl2ClassRep::Kind::Identity) {
        label.kind = (e.k == 0) ? ConjClassLabel::Kind::Identity : ConjClassLabel::Kind::Central;
        label.shift = e.k;
        return label;
    }

    const CoverElement g{inv(rep.conjugator), 0};
    const CoverElement normal = conjugate(e, g, cocycle_tol);
    // normal.m only approximates the representative, and its canonical lift
    // may sit on the other side of the deck wrap; realizing both sides at 0
    // pins the shift relative to the exact normal form. The loose tolerance
    // absorbs conjugator conditioning near the parabolic boundary.
    const double c = realize(normal)(0.0) -
                     canonical_lift_matrix(rep.representative())(0.0);
    const double rc = std::round(c);
    if (std::abs(c - rc) > 0.1)
        throw CocycleNotIntegral("classify: normal-form shift " + std::to_string(c) +
                                 " is not near an integer");

    switch (rep.kind) {
        case Psl2ClassRep::Kind::Hyperbolic:
            label.kind = ConjClassLabel::Kind::Hyperbolic;
            label.lambda = rep.lambda;
            break;
        case Psl2ClassRep::Kind::ParabolicPlus:
            label.kind = ConjClassLabel::Kind::ParabolicPlus;
            break;
        case Psl2ClassRep::Kind::ParabolicMinus:
            label.kind = ConjClassLabel::Kind::ParabolicMinus;
            break;
        case Psl2ClassRep::Kind::Elliptic:
            label.kind = ConjClassLabel::Kind::Elliptic;
            label.theta = rep.theta;
            break;
        default:
            break;
    }
    label.shift = static_cast<int>(rc);
    return label;
}

inline bool are_conjugate(const CoverElement& e1, const CoverElement& e2,
                          double eps_param = 1e-9) {
    return classify(e1).equal(classify(e2), eps_param);
}

/// Exact translation number of a conjugacy class.
inline double tau_exact_of(const ConjClassLabel& label) {
    switch (label.kind) {
        case ConjClassLabel::Kind::Identity: return 0.0;
        case ConjClassLabel::Kind::Elliptic:
            return label.theta / std::numbers::pi + static_cast<double>(label.shift);
        default: return static_cast<double>(label.shift);
    }
}

/// Exact direction type of a conjugacy class, read off the classification:
/// positive shifts move forward, negative ones backward; at shift zero the
/// normal forms with fixed points split into the semi and alternating types
/// (the shear u_1 pushes lines backward, u_{-1} forward).
inline DirectionType direction_of(const ConjClassLabel& label) {
    using K = ConjClassLabel::Kind;
    if (label.kind == K::Identity) return DirectionType::Identity;
    if (label.shift > 0) return DirectionType::Forward;
    if (label.kind == K::Elliptic)
        return label.shift >= 0 ? DirectionType::Forward : DirectionType::Backward;
    if (label.shift < 0) return DirectionType::Backward;
    switch (label.kind) {
        case K::ParabolicPlus: return DirectionType::SemiBackward;
        case K::ParabolicMinus: return DirectionType::SemiForward;
        case K::Hyperbolic: return DirectionType::Alternating;
        default: return DirectionType::Identity;  // central with shift 0
    }
}

/// Exact length-sharp of a conjugacy class. Central classes and the
/// forward/backward shear classes whose displacement touches the shift
/// exactly land on integer points; everything else fills an open interval.
inline RSharp ell_sharp_of(const ConjClassLabel& label) {
    using K = ConjClassLabel::Kind;
    const int k = label.shift;
    switch (label.kind) {
        case K::Identity: return RSharp::point(0);
        case K::Central: return RSharp::point(std::abs(k));
        case K::Elliptic: return k >= 0 ? RSharp::interval(k) : RSharp::interval(-k - 1);
        case K::ParabolicPlus:
            if (k == 0) return RSharp::interval(0);
            return k > 0 ? RSharp::point(k) : RSharp::interval(-k);
        case K::ParabolicMinus:
            if (k == 0) return RSharp::interval(0);
            return k > 0 ? RSharp::interval(k) : RSharp::point(-k);
        case K::Hyperbolic: return RSharp::interval(std::abs(k));
    }
    return RSharp::point(0);
}

enum class TraceCategory { lt2, eq2, gt2, central };

inline const char* to_string(TraceCategory t) {
    switch (t) {
        case TraceCategory::lt2: return "lt2";
        case TraceCategory::eq2: return "eq2";
        case TraceCategory::gt2: return "gt2";
        case TraceCategory::central: return "central";
    }
    return "?";
}

/// Full invariant tuple of an element: trace, direction type, length-sharp
/// and translation number, each produced twice (exactly from the class label
/// and numerically from the realized lift) and cross-checked by callers.
struct InvariantReport {
    ProjMat matrix;
    int k = 0;
    ConjClassLabel label;
    double trace_bar = 0.0;
    TraceCategory trace_category = TraceCategory::central;
    DirectionType direction = DirectionType::Identity;
    RSharp ell_sharp;
    double tau_exact = 0.0;
    TauEstimate tau_numeric;
    // numeric cross-checks
    DirectionType direction_numeric = DirectionType::Identity;
    RSharp ell_sharp_numeric;
    bool consistent = false;
};

struct ReportOptions {
    int grid = 4096;
    int tau_iters = 10000;
    double eps_zero = 1e-9;
    double eps_int = 1e-6;
    double cocycle_tol = 1e-6;
    double eps_parab = 1e-9;
};

inline InvariantReport invariant_report(const CoverElement& e, const ReportOptions& opt = {}) {
    InvariantReport rep;
    rep.matrix = e.m;
    rep.k = e.k;
    rep.label = classify(e, opt.cocycle_tol, opt.eps_parab);
    rep.trace_bar = e.m.trace_bar();
    if (e.m.is_identity())
        rep.trace_category = TraceCategory::central;
    else if (rep.trace_bar > 2.0 + opt.eps_parab)
        rep.trace_category = TraceCategory::gt2;
    else if (rep.trace_bar < 2.0 - opt.eps_parab)
        rep.trace_category = TraceCategory::lt2;
    else
        rep.trace_category = TraceCategory::eq2;

    rep.direction = direction_of(rep.label);
    rep.ell_sharp = ell_sharp_of(rep.label);
    rep.tau_exact = tau_exact_of(rep.label);

    const Lift lift = realize(e);
    rep.tau_numeric = translation_number(lift, opt.tau_iters);
    rep.direction_numeric = direction_type(lift, opt.eps_zero, opt.grid);
    rep.ell_sharp_numeric = length_sharp(lift, opt.eps_int, opt.grid);

    rep.consistent = rep.direction == rep.direction_numeric &&
                     rep.ell_sharp == rep.ell_sharp_numeric &&
                     std::abs(rep.tau_exact - rep.tau_numeric.value) <=
                         rep.tau_numeric.error_bound;
    return rep;
}

/// Distance of the lifted commutator [e1, e2] from the identity, for a pair
/// whose projective images commute. Commutant-preservation of the covering
/// says this must vanish; anything above ~1e-6 signals numeric breakdown.
inline double cp_commutator_check(const CoverElement& e1, const CoverElement& e2,
                                  int grid = 4096, double cocycle_tol = 1e-6) {
    if (mat_dist(mul(e1.m, e2.m), mul(e2.m, e1.m)) > 1e-9)
        throw PreconditionViolated("cp_commutator_check: projective images do not commute");
    const CoverElement comm =
        mul(mul(e1, e2, cocycle_tol),
            mul(inv(e1, cocycle_tol), inv(e2, cocycle_tol), cocycle_tol), cocycle_tol);
    return dist_sup(realize(comm), identity_lift(), grid);
}

}  // namespace sl2cover
