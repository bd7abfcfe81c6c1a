#pragma once

#include <stdexcept>
#include <string>

namespace qga {

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside its domain (or produced a non-finite value).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Input failed a precondition check (cone membership, monotonicity, period mismatch, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Target value not bracketed by the supplied interval.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Orbit recursion needed more steps than allowed.
class IterationCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace qga
