#pragma once

#include <stdexcept>
#include <string>

namespace jetgeo {

/// Base class for all jetgeo error conditions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested an operation on the identically-zero polynomial.
class IdenticallyZeroError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical scheme failed to meet its tolerance.
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

/// F^2 >= 1 everywhere; there is no region where the x-dynamics live.
class NoHillIntervalError : public Error {
public:
    using Error::Error;
};

/// Operation requires a bounded interval but got a line/point case.
class UnboundedIntervalError : public Error {
public:
    using Error::Error;
};

/// Operation requires both interval endpoints to be regular (simple roots).
class CriticalEndpointError : public Error {
public:
    using Error::Error;
};

/// Initial state does not satisfy p_x^2 + F^2(x) = 1 to tolerance.
class BadInitialEnergyError : public Error {
public:
    using Error::Error;
};

/// Adaptive step size collapsed below the representable floor.
class StepSizeUnderflowError : public Error {
public:
    using Error::Error;
};

/// A finite-difference perturbation destroyed the x-periodic interval.
class PerturbationLeavesClassError : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagree beyond
/// tolerance; signals a quadrature failure, not a mathematical discovery.
class InconsistentComputationError : public Error {
public:
    using Error::Error;
};

/// Evaluation point lies outside the Hill interval.
class OutsideHillError : public Error {
public:
    using Error::Error;
};

/// Scenario file is missing, malformed, or violates a config invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace jetgeo
