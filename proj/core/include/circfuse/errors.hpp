#pragma once

#include <stdexcept>
#include <string>

namespace circfuse {

// Input outside an operation's mathematical domain (non-finite angle,
// negative Bessel argument, non-positive variance, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The resultant vector has zero length, so it has no orientation.
class UndefinedMeanError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Second-moment variance estimate is not identifiable: the sample cannot be
// told apart from a uniform one at this sample size.
class DispersionTooHighError : public DomainError {
 public:
  using DomainError::DomainError;
};

// All samples coincide; the concentration estimate diverges.
class InfiniteConcentrationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Heading of a zero velocity vector.
class UndefinedHeadingError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A covariance (or sum of covariances) is singular or not positive definite.
class DegenerateCovarianceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Caller broke an API contract (mixed dispersion families, empty input,
// negative time step, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace circfuse

namespace circfuse {

// File could not be read, written, or renamed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace circfuse
