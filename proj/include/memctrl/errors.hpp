#pragma once

#include <stdexcept>
#include <string>

namespace memctrl {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue lambda_n^2 is (numerically) zero; the construction divides
/// by lambda_n and cannot proceed.
class DegenerateEigenvalue : public Error {
 public:
  using Error::Error;
};

/// The Dirichlet lift problem u'' + b u = 0 is resonant (b = (m pi)^2).
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Two signals that must share a TimeGrid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// The grid violates the resolution rule h * |lambda| <= 0.5.
class UnderResolved : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration did not reach the requested tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Operation requires a real lambda_n (large-n regime).
class ImaginaryLambda : public Error {
 public:
  using Error::Error;
};

/// Gram matrix condition estimate exceeds the solvable threshold.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Target smoothness class does not match the kernel-set order.
class ClassMismatch : public Error {
 public:
  using Error::Error;
};

/// A kernel set does not cover every mode of the basis.
class MissingMode : public Error {
 public:
  using Error::Error;
};

/// A generator violates the vanishing-moment constraints of its class.
class ConstraintViolated : public Error {
 public:
  using Error::Error;
};

/// The synthesized control misses the target beyond the reach threshold.
class ReachFailed : public Error {
 public:
  ReachFailed(const std::string& msg, double error) : Error(msg), reach_error(error) {}
  double reach_error;
};

/// The obstruction functional vanishes: the negative-regularity experiment
/// is inconclusive for this generator.
class ObstructionVanishes : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace memctrl
