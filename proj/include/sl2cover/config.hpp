#pragma once

#include <cstdint>

#include "sl2cover/errors.hpp"

namespace sl2cover {

/// Numeric knobs shared by the classification and verification entry points.
struct Config {
    int grid = 4096;            // sample grid for profiles / sup-distances
    int tau_iters = 10000;      // iterations for translation-number estimates
    double tol_eq = 1e-9;       // allowed equivariance residual
    double tol_inv = 1e-10;     // inversion accuracy
    double eps_int = 1e-6;      // integer snap for length-sharp
    double eps_zero = 1e-9;     // zero threshold for displacement signs
    double eps_parab = 1e-9;    // band around trace 2 treated as parabolic
    double cocycle_tol = 1e-6;  // max distance of a deck cocycle from its integer
    std::uint64_t seed = 0x5eedc0de'2718281aULL;

    void check() const {
        if (grid < 64) throw PreconditionViolated("Config: grid must be >= 64");
        if (tau_iters < 1) throw PreconditionViolated("Config: tau_iters must be >= 1");
        if (tol_eq <= 0 || tol_inv <= 0 || eps_int <= 0 || eps_zero <= 0 ||
            eps_parab <= 0 || cocycle_tol <= 0)
            throw PreconditionViolated("Config: tolerances must be positive");
    }
};

}  // namespace sl2cover
