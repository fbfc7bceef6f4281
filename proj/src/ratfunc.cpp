#include "mordell/ratfunc.hpp"

#include "mordell/error.hpp"

namespace mordell {

RatFunc::RatFunc(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}

RatFunc::RatFunc(const Poly& p) : num_(p), den_(Poly::constant(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divrem(num_, g).first;
      den_ = divrem(den_, g).first;
    }
  }
  const Rational lc = den_.lead();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DomainError("division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  reduce();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::pow(unsigned e) const {
  // Powers of coprime polynomials stay coprime; only the monic
  // normalization needs redoing (den is already monic, so nothing to do).
  RatFunc r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  if (r.num_.is_zero()) r.den_ = Poly::constant(1);
  return r;
}

Rational RatFunc::eval(const Rational& t0) const {
  const Rational d = den_.eval(t0);
  if (d == 0)
    throw PoleError("rational function has a pole at " + mordell::to_string(t0), mordell::to_string(t0));
  return num_.eval(t0) / d;
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  // Horner on numerator and denominator separately.
  auto horner = [&g](const Poly& p) {
    RatFunc acc;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * g + RatFunc(*it);
    return acc;
  };
  return horner(num_) / horner(den_);
}

std::optional<RatFunc> RatFunc::sqrt() const {
  auto n = num_.sqrt();
  if (!n) return std::nullopt;
  auto d = den_.sqrt();
  if (!d) return std::nullopt;
  // den is monic so its root (positive lead) is monic too; num's root has a
  // positive leading coefficient by construction of Poly::sqrt.
  RatFunc r;
  r.num_ = std::move(*n);
  r.den_ = std::move(*d);
  return r;
}

std::string RatFunc::to_string(char var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace mordell
