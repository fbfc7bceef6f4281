#include "mordell/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mordell/error.hpp"

namespace mordell {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Poly Poly::from_ints(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  c.reserve(ascending.size());
  for (long v : ascending) c.emplace_back(v);
  return Poly(std::move(c));
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::identity() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

Rational Poly::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / lead());
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> Poly::rational_roots() const {
  if (degree() < 1) return {};
  // Strip the factor t^k, clear denominators, then apply the rational root
  // theorem to the square-free part (keeps the divisor lists short).
  std::set<Rational> roots;
  std::size_t low = 0;
  while (c_[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  Poly p(std::vector<Rational>(c_.begin() + static_cast<long>(low), c_.end()));
  if (p.degree() >= 1) {
    const Poly g = gcd(p, p.derivative());
    p = divrem(p, g).first;
    Integer lcm_den = 1;
    for (const auto& c : p.c_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    const Integer a0 = Rational(p.c_.front() * lcm_den).get_num();
    const Integer an = Rational(p.c_.back() * lcm_den).get_num();
    for (const auto& num : positive_divisors(a0)) {
      for (const auto& den : positive_divisors(an)) {
        for (int s : {1, -1}) {
          Rational cand(num * s, den);
          cand.canonicalize();
          if (p.eval(cand) == 0) roots.insert(cand);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

std::optional<Poly> Poly::sqrt() const {
  if (is_zero()) return Poly{};
  if (degree() % 2 != 0) return std::nullopt;
  const auto lead_root = exact_sqrt(lead());
  if (!lead_root || lead() < 0) return std::nullopt;
  const std::size_t half = static_cast<std::size_t>(degree() / 2);
  // Match coefficients of s^2 from the top down: the coefficient of
  // t^(half + k) determines s_k once s_(k+1..half) are known.
  std::vector<Rational> s(half + 1);
  s[half] = *lead_root;
  const Rational two_lead = 2 * s[half];
  for (std::size_t step = 1; step <= half; ++step) {
    const std::size_t k = half - step;
    Rational acc = coeff(half + k);
    for (std::size_t i = k + 1; i <= half; ++i) {
      const std::size_t j = half + k - i;
      if (j > k && j <= half && j != half) acc -= s[i] * s[j];
    }
    s[k] = acc / two_lead;
  }
  Poly root(std::move(s));
  if (root * root != *this) return std::nullopt;
  return root;
}

std::string Poly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const bool unit = mag == 1;
    if (i == 0 || !unit) {
      os << mordell::to_string(mag);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational inv_lead = 1 / b.lead();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const auto top = static_cast<std::size_t>(k + b.degree());
    const Rational q = rem[top] * inv_lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= q * bc[j];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  Poly x = a.monic();
  Poly y = b.monic();
  while (!y.is_zero()) {
    Poly r = divrem(x, y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

}  // namespace mordell
