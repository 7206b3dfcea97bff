#pragma once

#include <stdexcept>
#include <string>

namespace g2fun {

// Misuse of an exact-algebra interface (mismatched rings, missing
// assignments, zero denominators). Distinct from numeric failures.
struct StructuralError : std::logic_error {
    using std::logic_error::logic_error;
};

// The quintic has (numerically) multiple roots.
struct CurveSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quadrature or linear-algebra step could not reach the requested
// tolerance; what() carries the achieved estimate.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Calibration of the sigma constant failed its cross-checks (usually a
// homology-basis mismatch).
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation requested inside the guard band of a pole / zero divisor.
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (e.g. Im(tau) not positive
// definite, or an argument too close to the sigma zero surface).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An integration path runs through a branch point or cannot be routed.
struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Calibration ray with vanishing leading coefficient.
struct DegenerateRay : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Sigma derivative order beyond what the evaluator supports.
struct UnsupportedOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Every candidate sample was rejected by the guard bands.
struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact certification step failed where failure is not a report
// outcome (e.g. a claimed divisibility does not hold).
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace g2fun
