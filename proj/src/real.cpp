#include "mordell/real.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "mordell/error.hpp"

namespace mordell {
namespace {

thread_local unsigned t_digits = 50;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

}  // namespace

mpfr_prec_t digits_to_bits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

unsigned working_digits() { return t_digits; }

PrecisionScope::PrecisionScope(unsigned digits) : saved_(t_digits) { t_digits = digits; }
PrecisionScope::~PrecisionScope() { t_digits = saved_; }

Real::Real() {
  mpfr_init2(v_, digits_to_bits(t_digits));
  mpfr_set_zero(v_, 1);
}

Real::Real(long v) {
  mpfr_init2(v_, digits_to_bits(t_digits));
  mpfr_set_si(v_, v, kRnd);
}

Real::Real(double v) {
  mpfr_init2(v_, digits_to_bits(t_digits));
  mpfr_set_d(v_, v, kRnd);
}

Real::Real(const Integer& z) {
  mpfr_init2(v_, digits_to_bits(t_digits));
  mpfr_set_z(v_, z.get_mpz_t(), kRnd);
}

Real::Real(const Rational& q) {
  mpfr_init2(v_, digits_to_bits(t_digits));
  mpfr_set_q(v_, q.get_mpq_t(), kRnd);
}

Real Real::from_string(const std::string& s) {
  Real r;
  if (mpfr_set_str(r.v_, s.c_str(), 10, kRnd) != 0) throw ParseError("malformed real: '" + s + "'");
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  // steal the limbs, leave `other` as a valid zero of minimal precision
  v_[0] = other.v_[0];
  mpfr_init2(other.v_, MPFR_PREC_MIN);
  mpfr_set_zero(other.v_, 1);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

namespace {

// Binary ops widen the left operand to the larger precision of the two.
void widen(mpfr_ptr a, mpfr_srcptr b) {
  if (mpfr_get_prec(b) > mpfr_get_prec(a)) mpfr_prec_round(a, mpfr_get_prec(b), kRnd);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(v_, o.v_);
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  widen(v_, o.v_);
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  widen(v_, o.v_);
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  widen(v_, o.v_);
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, kRnd);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool Real::is_finite() const { return mpfr_number_p(v_) != 0; }
bool Real::is_zero() const { return mpfr_zero_p(v_) != 0; }
int Real::sign() const { return mpfr_sgn(v_); }
double Real::to_double() const { return mpfr_get_d(v_, kRnd); }

std::string Real::to_string(unsigned digits) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  // Significant digits -> digits after the point, based on the magnitude.
  long after_point = static_cast<long>(digits);
  if (!is_zero()) {
    const long exp10 = static_cast<long>(std::floor(mpfr_get_exp(v_) * 0.30102999566398120));
    after_point = static_cast<long>(digits) - std::max(exp10, 0L) - 1;
  }
  if (after_point < 0) after_point = 0;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", static_cast<int>(after_point), v_);
  std::unique_ptr<char, decltype(&mpfr_free_str)> guard(buf, &mpfr_free_str);
  return std::string(buf);
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), r.get(), kRnd);
  return r;
}

Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log of non-positive real");
  Real r(x);
  mpfr_log(r.get(), x.get(), kRnd);
  return r;
}

Real log(const Integer& z) {
  if (z <= 0) throw DomainError("log of non-positive integer");
  // Precision of the result, not of the (possibly huge) integer argument.
  Real r;
  mpfr_t tmp;
  mpfr_init2(tmp, std::max<mpfr_prec_t>(r.precision_bits(), static_cast<mpfr_prec_t>(mpz_sizeinbase(z.get_mpz_t(), 2))));
  mpfr_set_z(tmp, z.get_mpz_t(), kRnd);
  mpfr_log(r.get(), tmp, kRnd);
  mpfr_clear(tmp);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x);
  mpfr_sqrt(r.get(), x.get(), kRnd);
  return r;
}

Real cbrt(const Real& x) {
  Real r(x);
  mpfr_cbrt(r.get(), x.get(), kRnd);
  return r;
}

Real pow10(long exponent) {
  Real r(10L);
  mpfr_pow_si(r.get(), r.get(), exponent, kRnd);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

}  // namespace mordell
