#pragma once

#include <optional>
#include <string>

#include "mordell/poly.hpp"

namespace mordell {

/// Element of Q(t), always held in canonical form: gcd(num, den) = 1, den
/// monic, scalar content carried by the numerator. Canonical form makes
/// equality structural; every operation re-reduces its result.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& p);      // NOLINT(google-explicit-constructor)
  /// Throws DomainError when den is zero.
  RatFunc(Poly num, Poly den);

  static RatFunc identity() { return RatFunc(Poly::identity()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  /// Throws DomainError on division by the zero function.
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  RatFunc pow(unsigned e) const;

  /// Exact value at t0. Throws PoleError when den(t0) = 0.
  Rational eval(const Rational& t0) const;

  /// f(g(t)): substitute g for the variable.
  RatFunc compose(const RatFunc& g) const;

  /// g with g^2 = *this, choosing the root whose numerator has a positive
  /// leading coefficient; empty when *this is not a square in Q(t).
  std::optional<RatFunc> sqrt() const;

  std::string to_string(char var = 't') const;

 private:
  void reduce();
  Poly num_;
  Poly den_;
};

}  // namespace mordell
