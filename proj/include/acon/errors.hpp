// errors.hpp
// Exception types shared across the simulator.

#ifndef ACON_ERRORS_HPP
#define ACON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace acon {

/// Base class for every error the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (bad parameters, bad config file).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A check was requested in a configuration it is not defined for
/// (e.g. the normalized H1 bound outside epsilon = 1, |box| = 1).
class ConfigMismatch : public Error {
public:
    using Error::Error;
};

/// The constraint-gradient mass int |f'(phi)|^2 fell below the guard floor,
/// so Lagrange multipliers and projections are numerically undefined.
class DegenerateConstraint : public Error {
public:
    using Error::Error;
};

/// The scalar root solve restoring mean f(phi) = omega did not converge.
class ProjectionFailed : public Error {
public:
    using Error::Error;
};

/// Requested volume fraction cannot be reached by the constant-based
/// initial-state construction (omega outside (0,1)).
class UnreachableTarget : public Error {
public:
    using Error::Error;
};

/// Inner minimization of the movement functional exhausted its iteration
/// budget before reaching the requested tolerances.
class InnerSolveFailed : public Error {
public:
    using Error::Error;
};

/// A field left the sane range (max |phi| > 1e6); usually the time step
/// is too large for the explicit terms.
class BlowUp : public Error {
public:
    using Error::Error;
};

} // namespace acon

#endif
