#pragma once

#include <stdexcept>
#include <string>

namespace mordell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, n-list files, config lines).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition on mathematical input was violated (zero divisor, d = 0,
/// point not on curve, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a rational function at a zero of its denominator.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::string at)
      : DomainError(what), at_(std::move(at)) {}
  const std::string& at() const noexcept { return at_; }

 private:
  std::string at_;
};

/// The family parameter hits a degenerate value (a pole of the family data, or d = 0).
class DegenerateParameter : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Work budget exhausted (Pollard rho iterations, search time, series terms).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class FactorizationTimeout : public BudgetExceeded {
 public:
  FactorizationTimeout(const std::string& what, std::string composite)
      : BudgetExceeded(what), composite_(std::move(composite)) {}
  /// Decimal string of the composite left unsplit.
  const std::string& composite() const noexcept { return composite_; }

 private:
  std::string composite_;
};

}  // namespace mordell
