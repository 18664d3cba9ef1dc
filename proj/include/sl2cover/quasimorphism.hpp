#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sl2cover/errors.hpp"
#include "sl2cover/lift.hpp"

namespace sl2cover {

/// A translation-number (or homogenization) estimate with a certified error
/// bound of the form C / iterations; the constant C is documented by the
/// producing operation.
struct TauEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    int iterations = 0;
};

/// Real-valued quasi-homomorphism on lifts. No structural requirement is
/// imposed: the defect is measured, not assumed.
struct QuasiMorphism {
    std::function<double(const Lift&)> evaluate;
    std::string name;
};

/// The evaluation quasi-morphism E_x : alpha -> alpha(x) - x. Its defect is
/// strictly less than 1, and |E_x - E_y| <= 1 for any two base points.
inline QuasiMorphism e_x(double x) {
    if (!std::isfinite(x)) throw PreconditionViolated("e_x: base point must be finite");
    return {[x](const Lift& a) { return a(x) - x; }, "E_" + std::to_string(x)};
}

/// Max of |phi(gh) - phi(g) - phi(h)| over the given pairs: a lower bound on
/// the defect of phi.
inline double defect_sample(const QuasiMorphism& phi,
                            const std::vector<std::pair<Lift, Lift>>& pairs) {
    if (pairs.empty()) throw PreconditionViolated("defect_sample: pairs must be nonempty");
    double worst = 0.0;
    for (const auto& [g, h] : pairs) {
        const double d = phi.evaluate(compose(g, h)) - phi.evaluate(g) - phi.evaluate(h);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

/// Estimate of the translation number tau(alpha) = lim alpha^n(0)/n, computed
/// by iterating the orbit of 0. The bound 2/n is conservative: the defect of
/// E_0 contributes at most 1/n, and the slack absorbs base-point dependence
/// and interpolation error of sampled lifts.
inline TauEstimate translation_number(const Lift& alpha, int n) {
    if (n < 1) throw PreconditionViolated("translation_number: n must be >= 1");
    double y = 0.0;
    for (int i = 0; i < n; ++i) y = alpha(y);
    return {y / static_cast<double>(n), 2.0 / static_cast<double>(n), n};
}

/// phi(g^n)/n with error bound D/n, D a caller-supplied defect bound. The
/// power is taken by pointwise iteration.
inline TauEstimate homogenize(const QuasiMorphism& phi, const Lift& g, int n,
                              double defect_bound = 1.0) {
    if (n < 1) throw PreconditionViolated("homogenize: n must be >= 1");
    const double v = phi.evaluate(power(g, n)) / static_cast<double>(n);
    return {v, defect_bound / static_cast<double>(n), n};
}

/// |tau_n(beta alpha beta^-1) - tau_n(alpha)|. Homogeneous quasi-morphisms
/// are class functions, so this is at most 4/n.
inline double tau_conjugation_residual(const Lift& alpha, const Lift& beta, int n) {
    const Lift conj = compose(compose(beta, alpha), invert(beta));
    return std::abs(translation_number(conj, n).value - translation_number(alpha, n).value);
}

}  // namespace sl2cover
