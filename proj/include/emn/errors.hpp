#pragma once

#include <stdexcept>
#include <string>

namespace emn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (zero modulus,
/// off-curve point, non-prime where a prime is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// v_p(0) was requested.
class UndefinedValuation : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A documented precondition (coprimality, parameter range) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Local height requested at a reduction type the library does not cover.
class UnsupportedReduction : public Error {
 public:
  using Error::Error;
};

/// Two independent derivations disagreed; indicates a bug, never a user error.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

/// The requested archimedean strategy is not valid for this curve.
class StrategyError : public Error {
 public:
  using Error::Error;
};

/// A bound or theorem was requested outside the regime where it is proven.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Interval arithmetic could not reach the requested accuracy.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace emn
