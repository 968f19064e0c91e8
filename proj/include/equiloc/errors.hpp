#pragma once

#include <stdexcept>
#include <string>

namespace equiloc {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two polynomials built over different variable sets were combined.
struct VariableMismatchError : Error {
    using Error::Error;
};

// A degree precondition failed (inhomogeneous input, wrong weighted degree, ...).
struct DegreeMismatchError : Error {
    using Error::Error;
};

// A degree-0 fraction turned out not to be a rational constant.
struct NotConstantError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

// Projective weights must be pairwise distinct for isolated fixed points.
struct RepeatedWeightsError : Error {
    using Error::Error;
};

struct UnknownPointError : Error {
    using Error::Error;
};

// The expected normal weight of an invariant hypersurface is missing from the
// ambient tangent multiset at a fixed point.
struct NormalWeightAbsentError : Error {
    using Error::Error;
};

struct ZeroNormalWeightError : Error {
    using Error::Error;
};

// A class claimed to be supported on X restricts to something nonzero at a
// fixed point outside X.
struct VanishingCheckError : Error {
    using Error::Error;
};

// A basis pivot is not a product of linear characters.
struct NonFactorablePivotError : Error {
    using Error::Error;
};

// The target has no expansion in the given basis.
struct InconsistentExpansionError : Error {
    using Error::Error;
};

// Zero or several Schubert conventions passed the boundary validations.
struct CalibrationError : Error {
    using Error::Error;
};

// Generic-point sampling kept hitting vanishing denominators.
struct EvaluationRetryError : Error {
    using Error::Error;
};

// A scenario document is well formed but semantically invalid.
struct ScenarioError : Error {
    using Error::Error;
};

} // namespace equiloc
