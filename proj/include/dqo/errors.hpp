#pragma once

#include <stdexcept>
#include <string>

namespace dqo {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A physical parameter is out of its domain (non-positive frequency, empty range, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// The susceptibility denominator vanished (only reachable without friction).
class PoleError : public Error {
public:
    using Error::Error;
};

// Conjugate-pair cancellation left a non-negligible imaginary part.
class ResidueError : public Error {
public:
    using Error::Error;
};

// The requested energy series does not converge for this bath (Ohmic E and Gibbs energy).
class DivergenceError : public Error {
public:
    using Error::Error;
};

// The Drude cubic has no sign change on its bracket.
class NoRealRootError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature hit its depth limit before reaching the tolerance.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

// Bath discretization grid is unusable.
class InvalidGridError : public Error {
public:
    using Error::Error;
};

// Dense symmetric eigensolve failed.
class EigenSolverError : public Error {
public:
    using Error::Error;
};

}  // namespace dqo
