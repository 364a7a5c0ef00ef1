#pragma once

#include <stdexcept>
#include <string>

namespace padicdyn {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands carry different primes.
class PrimeMismatch : public Error {
public:
    using Error::Error;
};

/// Exact division by zero.
class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// The modulus given at construction is not a prime number.
class NotPrime : public Error {
public:
    using Error::Error;
};

/// Map parameters violate a construction constraint (a == c, or c^2 - ac + b == 0).
class InvalidMapParams : public Error {
public:
    using Error::Error;
};

/// Evaluation reached the pole -c. `step` is the orbit index at which it happened
/// (0 when the starting point itself is the pole, -1 for a single evaluation).
class PoleHit : public Error {
public:
    PoleHit(const std::string& what, int step_index) : Error(what), step(step_index) {}
    int step;
};

/// The queried radius is not in the invariant-radius set of the map.
class NotInvariantRadius : public Error {
public:
    using Error::Error;
};

/// The given center does not lie on the required sphere.
class NotOnSphere : public Error {
public:
    using Error::Error;
};

/// A positive radius was required but the zero radius was given.
class ZeroRadius : public Error {
public:
    using Error::Error;
};

/// Measure query with rho > r (the ball is not inside the sphere context).
class InvalidRadiusPair : public Error {
public:
    using Error::Error;
};

/// Input violates the domain precondition of the mod-4 ergodicity criterion.
class DomainViolation : public Error {
public:
    using Error::Error;
};

/// A residue-map coefficient or denominator is not a unit where one is required.
class NonUnitDenominator : public Error {
public:
    using Error::Error;
};

/// Problem in a configuration file or CLI flag set.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A cross-check that must hold by construction failed. Never expected at runtime;
/// indicates a defect in this library, not in the caller's input.
class InternalCheckFailure : public Error {
public:
    using Error::Error;
};

} // namespace padicdyn
