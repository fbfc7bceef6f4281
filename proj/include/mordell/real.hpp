#pragma once

// Extended-precision real numbers: a value-semantic RAII handle over an
// mpfr_t. New values are created at the calling thread's working precision
// (see PrecisionScope), so parallel workers can run at independent
// precisions without touching global state.

#include <mpfr.h>

#include <compare>
#include <string>

#include "mordell/arith.hpp"

namespace mordell {

/// Decimal digits -> MPFR bits, with a small safety margin.
mpfr_prec_t digits_to_bits(unsigned digits);

/// Current thread's working precision in decimal digits.
unsigned working_digits();

/// Sets the thread's working precision for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

class Real {
 public:
  Real();
  Real(long v);  // NOLINT(google-explicit-constructor)
  Real(int v) : Real(static_cast<long>(v)) {}  // NOLINT
  explicit Real(double v);
  explicit Real(const Integer& z);
  explicit Real(const Rational& q);
  /// Parses a decimal string ("83.3621963770719", "-1e-30").
  static Real from_string(const std::string& s);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  bool is_finite() const;
  bool is_zero() const;
  int sign() const;
  double to_double() const;
  mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }

  /// Fixed-point decimal rendering with `digits` significant digits.
  std::string to_string(unsigned digits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real log(const Real& x);
Real log(const Integer& z);  // exact integer argument, no intermediate rounding to double
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real pow10(long exponent);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

}  // namespace mordell
