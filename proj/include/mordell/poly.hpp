#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mordell/arith.hpp"

namespace mordell {

/// Dense univariate polynomial over Q. coeffs()[i] is the coefficient of
/// t^i; there is never a trailing zero, so the zero polynomial is the empty
/// vector and structural equality is mathematical equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);
  /// Convenience for literal data: ascending integer coefficients.
  static Poly from_ints(std::initializer_list<long> ascending);
  static Poly constant(const Rational& c);
  /// The polynomial t.
  static Poly identity();

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of t^i (zero past the degree).
  Rational coeff(std::size_t i) const;
  /// Leading coefficient; zero for the zero polynomial.
  Rational lead() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  Poly operator-() const;
  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned e) const;
  Poly monic() const;
  Poly derivative() const;
  Rational eval(const Rational& t) const;

  /// Distinct rational roots, ascending.
  std::vector<Rational> rational_roots() const;

  /// Exact square root with positive leading coefficient, if p = q^2.
  std::optional<Poly> sqrt() const;

  /// Pretty form in the given variable, e.g. "t^3 + 3*t^2 - 6*t - 8".
  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// (quotient, remainder) with deg(remainder) < deg(b). Throws DomainError
/// when b is zero.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

/// Monic gcd. Throws DomainError when both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace mordell
