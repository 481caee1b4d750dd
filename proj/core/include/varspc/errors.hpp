#pragma once

#include <stdexcept>
#include <string>

namespace varspc {

// Base class for all library errors so callers can catch varspc::Error
// without enumerating every condition.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A linear system's pivot collapsed relative to the initial pivot scale.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// An iterative eigenvalue computation failed to converge.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// A matrix expected to be symmetric positive definite failed factorization.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// Phase-I limit requested with mn - m - v + 1 < 1.
class DegreesOfFreedomExhausted : public Error {
 public:
  using Error::Error;
};

// Vector or matrix dimensions incompatible with the operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Residuals requested for a lag-p model without p rows of history.
class MissingHistory : public Error {
 public:
  using Error::Error;
};

// Least-squares regressor matrix is rank deficient.
class RankDeficientRegressors : public Error {
 public:
  using Error::Error;
};

// Sample autocorrelation of a constant series.
class ZeroVariance : public Error {
 public:
  using Error::Error;
};

// More than 1% of simulation replications hit the run-length cap.
class ExcessiveCensoring : public Error {
 public:
  using Error::Error;
};

// Model fails the stationarity check required by the requested operation.
class NotStationary : public Error {
 public:
  using Error::Error;
};

// Malformed external input (CSV or JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated (bad sizes, counts, or ranges).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace varspc
