#include <doctest.h>

#include <random>

#include "mordell/error.hpp"
#include "mordell/ratfunc.hpp"

using namespace mordell;

namespace {

Poly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coeff(-9, 9);
  std::vector<Rational> c(deg(rng) + 1);
  for (auto& x : c) x = coeff(rng);
  if (c.back() == 0) c.back() = 1;
  return Poly(c);
}

RatFunc random_ratfunc(std::mt19937& rng) {
  Poly den = random_poly(rng, 3);
  while (den.is_zero()) den = random_poly(rng, 3);
  return RatFunc(random_poly(rng, 4), den);
}

}  // namespace

TEST_CASE("polynomial division and gcd") {
  const Poly a = Poly::from_ints({-1, 0, 1});  // t^2 - 1
  const Poly b = Poly::from_ints({1, 1});      // t + 1
  auto [q, r] = divrem(a, b);
  CHECK(q == Poly::from_ints({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, Poly::from_ints({2, 3, 1})) == b);
  CHECK_THROWS_AS(divrem(a, Poly()), DomainError);
}

TEST_CASE("rational roots") {
  // (t + 4)(t - 2)(t + 1)
  const Poly p = Poly::from_ints({4, 1}) * Poly::from_ints({-2, 1}) * Poly::from_ints({1, 1});
  CHECK(p.rational_roots() == std::vector<Rational>{-4, -1, 2});
  CHECK(Poly::from_ints({2, 0, 1}).rational_roots().empty());
  CHECK((Poly::from_ints({-1, 2}).pow(3)).rational_roots() == std::vector<Rational>{Rational(1, 2)});
}

TEST_CASE("canonical form: reduced with monic denominator") {
  const RatFunc f(Poly::from_ints({-2, 2, 0}) * Poly::from_ints({1, 1}), Poly::from_ints({2, 2}));
  CHECK(f == RatFunc(Poly::from_ints({-1, 1})));
  CHECK(f.den() == Poly::constant(1));
  CHECK_THROWS_AS(RatFunc(Poly::identity(), Poly()), DomainError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    const RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == RatFunc());
    if (!a.is_zero()) CHECK(a / a == RatFunc(Rational(1)));
  }
}

TEST_CASE("evaluation is a ring homomorphism away from poles") {
  std::mt19937 rng(11);
  const Rational t0(7, 3);
  for (int i = 0; i < 30; ++i) {
    const RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng);
    try {
      const Rational va = a.eval(t0), vb = b.eval(t0);
      CHECK((a * b).eval(t0) == va * vb);
      CHECK((a + b).eval(t0) == va + vb);
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("poles are reported") {
  const RatFunc f(Poly::constant(1), Poly::from_ints({-2, 1}));
  CHECK_THROWS_AS(f.eval(Rational(2)), PoleError);
  CHECK_THROWS_AS(RatFunc(Rational(1)) / RatFunc(), DomainError);
}

TEST_CASE("composition agrees with evaluation") {
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    const RatFunc f = random_ratfunc(rng), g = random_ratfunc(rng);
    const Rational t0(5, 7);
    try {
      const Rational inner = g.eval(t0);
      const Rational expected = f.eval(inner);
      CHECK(f.compose(g).eval(t0) == expected);
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("square roots of squares and non-squares") {
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    const RatFunc a = random_ratfunc(rng);
    const auto r = (a * a).sqrt();
    REQUIRE(r.has_value());
    CHECK(*r * *r == a * a);
  }
  CHECK_FALSE(RatFunc(Poly::from_ints({1, 0, 1})).sqrt().has_value());
  CHECK_FALSE(RatFunc(Rational(-4)).sqrt().has_value());
  CHECK(RatFunc(Rational(9, 4)).sqrt() == RatFunc(Rational(3, 2)));
}

TEST_CASE("printing") {
  const RatFunc f(Poly::from_ints({-5, 4}), Poly::from_ints({-1, 0, 1}));
  CHECK(f.to_string('k') == "(4*k - 5)/(k^2 - 1)");
  CHECK(RatFunc(Rational(-3, 2)).to_string() == "-3/2");
}
