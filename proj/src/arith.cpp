#include "mordell/arith.hpp"

#include <cctype>

#include "mordell/error.hpp"

namespace mordell {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_signed_digits(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!is_signed_digits(num, true) || !is_signed_digits(den, false))
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  std::string num_str(num);
  if (num_str.front() == '+') num_str.erase(0, 1);
  Rational q;
  q.get_num().set_str(num_str, 10);
  q.get_den().set_str(std::string(den), 10);
  if (q.get_den() == 0) throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}
std::string to_string(const Integer& z) { return z.get_str(10); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return r;  // powers of a reduced fraction stay reduced
}

Integer pow(const Integer& base, unsigned exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  if (p < 2) throw DomainError("valuation base must be >= 2");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& q, const Integer& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (rem != 0) return std::nullopt;
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  auto num = exact_sqrt(q.get_num());
  if (!num) return std::nullopt;
  auto den = exact_sqrt(q.get_den());
  if (!den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

Integer ceil_cbrt(const Integer& n) {
  if (n < 0) {
    // smallest c with c^3 >= n, n < 0: c = -floor(cbrt(-n))
    Integer m = -n, r;
    mpz_root(r.get_mpz_t(), m.get_mpz_t(), 3);
    return -r;
  }
  Integer r;
  const bool exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) != 0;
  return exact ? r : r + 1;
}

}  // namespace mordell
