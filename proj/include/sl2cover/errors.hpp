#pragma once

#include <stdexcept>
#include <string>

namespace sl2cover {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A function table or composition is not a strictly increasing equivariant map.
struct InvalidLift : Error {
    explicit InvalidLift(const std::string& what) : Error(what) {}
};

/// Root bracketing / bisection failed (should be impossible on valid lifts).
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

/// Matrix input is not a valid element of PSL2(R) (bad determinant or non-finite entries).
struct InvalidMatrix : Error {
    explicit InvalidMatrix(const std::string& what) : Error(what) {}
};

/// The deck-shift cocycle failed to round to an integer within tolerance.
struct CocycleNotIntegral : Error {
    explicit CocycleNotIntegral(const std::string& what) : Error(what) {}
};

/// A documented operation precondition was violated by the caller.
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

/// An operation requiring a central subgroup was given a non-central one.
struct NotCentral : Error {
    explicit NotCentral(const std::string& what) : Error(what) {}
};

/// Independently computed equivalent conditions disagreed (implementation bug).
struct EquivalenceViolation : Error {
    explicit EquivalenceViolation(const std::string& what) : Error(what) {}
};

/// Multiplication table input does not define a group.
struct InvalidGroup : Error {
    explicit InvalidGroup(const std::string& what) : Error(what) {}
};

}  // namespace sl2cover
