#ifndef SFLOW_ERRORS_HPP
#define SFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sflow {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input violates a structural invariant (non-Hermitian matrix, bad dimension, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A scalar function was evaluated outside its domain.
class DomainError : public Error {
public:
  DomainError(const std::string& msg, double eigenvalue)
      : Error(msg), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

/// An eigenvalue sits inside the guard band of a spectral-projection boundary.
class GapViolation : public Error {
public:
  GapViolation(const std::string& msg, double eigenvalue, double boundary)
      : Error(msg), eigenvalue(eigenvalue), boundary(boundary) {}
  double eigenvalue;
  double boundary;
};

/// Path endpoints do not match at a concatenation point.
class ConcatenationError : public Error {
public:
  ConcatenationError(const std::string& msg, double gap) : Error(msg), gap(gap) {}
  double gap;
};

/// Adaptive subdivision hit the depth limit without finding an admissible mu.
class SubdivisionFailure : public Error {
public:
  SubdivisionFailure(const std::string& msg, double segment_start, double segment_end)
      : Error(msg), segment_start(segment_start), segment_end(segment_end) {}
  double segment_start;
  double segment_end;
};

/// Eigenvalue tracking between consecutive samples is ambiguous; more samples needed.
class OracleResolutionError : public Error {
public:
  using Error::Error;
};

/// Winding-number quadrature did not resolve; more quadrature points needed.
class WindingResolutionError : public Error {
public:
  using Error::Error;
};

/// A stated precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Numeric routine failed to converge.
class NumericError : public Error {
public:
  NumericError(const std::string& msg, int iterations) : Error(msg), iterations(iterations) {}
  int iterations;
};

}  // namespace sflow

#endif
