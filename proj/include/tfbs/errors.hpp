#pragma once

#include <stdexcept>
#include <string>

namespace tfbs {

/// Parameter outside its documented range (alpha, epsilon, gamma, ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A kernel approximation failed its post-construction accuracy sweep.
struct CertificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The SOE tolerance does not satisfy the admissibility bound required
/// by the kernel positivity/monotonicity guarantees.
struct ToleranceViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the certified interval.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Vector/matrix sizes do not match.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Spatial step too coarse for the compact operator (h >= 2a/|b|).
struct AdmissibilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// History recursion driven out of sequence.
struct StateOrderError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Complementary-kernel recursion hit a nonpositive diagonal entry.
struct SingularKernel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-constant boundary data without analytic Caputo derivatives.
struct MissingCaputo : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Grids that are required to nest do not.
struct IncompatibleGrids : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// NaN/Inf appeared in a solution vector.
struct NonFiniteSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mesh rejected by the stepper (step-ratio condition violated).
struct MeshConditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace tfbs
