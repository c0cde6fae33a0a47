#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relspec {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Malformed arguments: dimension mismatches, out-of-range sizes, bad files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold (e.g. μ ∉ ρ(T)).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// λ lies on (or numerically too close to) a symbol curve.
class OnCurveError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The operation is not defined for this operator class.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kDefaultTol = 1e-10;

/// Rank tolerance used when callers do not pass one. Reads RELSPEC_TOL once;
/// falls back to 1e-10 when unset or unparsable.
double default_tol();

/// Worker count for data-parallel loops. Reads RELSPEC_THREADS once; defaults
/// to the hardware concurrency.
unsigned default_threads();

}  // namespace relspec
