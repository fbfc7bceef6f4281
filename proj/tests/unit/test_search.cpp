#include <doctest.h>

#include <algorithm>

#include "mordell/error.hpp"
#include "mordell/search.hpp"

using namespace mordell;

namespace {

IntegralModel model_for(long D) {
  const HeightContext ctx;
  return integralize(MordellCurve(Rational(D)), ctx);
}

std::vector<Rational> xs(const SearchResult& r) {
  std::vector<Rational> out;
  for (const auto& P : r.points) out.push_back(P.x());
  return out;
}

}  // namespace

TEST_CASE("classical integral points on y^2 = x^3 + 1") {
  SearchConfig cfg;
  cfg.denom_bound = 3;
  cfg.numer_bound = 1000;
  const SearchResult r = search_points(model_for(1), cfg);
  CHECK(xs(r) == std::vector<Rational>{-1, 0, 2});
  for (const auto& P : r.points) CHECK(P.y() >= 0);
  CHECK_FALSE(r.truncated);
}

TEST_CASE("y^2 = x^3 - 2 has (3, 5) and no other small point") {
  SearchConfig cfg;
  cfg.denom_bound = 1;
  cfg.numer_bound = 10000;
  CHECK(xs(search_points(model_for(-2), cfg)) == std::vector<Rational>{3});
}

TEST_CASE("a curve with no small points") {
  // y^2 = x^3 + 6 has rank 0 and trivial torsion
  SearchConfig cfg;
  cfg.denom_bound = 10;
  cfg.numer_bound = 5000;
  CHECK(search_points(model_for(6), cfg).points.empty());
}

TEST_CASE("search on the n = 3 model rediscovers the three printed points") {
  const HeightContext ctx;
  const auto s = family::specialize(Rational(3));
  const IntegralModel M = integralize(*s.curve, ctx);
  SearchConfig cfg;
  cfg.denom_bound = 3;
  cfg.numer_bound = 50000;
  const auto found = xs(search_points(M, cfg));
  for (const auto& P : s.points) {
    const Rational X = M.to_model(P).x();
    CHECK(std::find(found.begin(), found.end(), X) != found.end());
  }
  CHECK(std::find(found.begin(), found.end(), Rational(0)) != found.end());  // the 3-torsion point
}

TEST_CASE("scalar and AVX2 backends find the same points") {
  const HeightContext ctx;
  const auto s = family::specialize(Rational(1, 5));
  const IntegralModel M = integralize(*s.curve, ctx);
  SearchConfig cfg;
  cfg.denom_bound = 4;
  cfg.numer_bound = 300000;
  cfg.backend = simd::Backend::scalar;
  const SearchResult a = search_points(M, cfg);
  cfg.backend = simd::best_backend();
  const SearchResult b = search_points(M, cfg);
  CHECK(a.points == b.points);
  CHECK(a.survivors == b.survivors);
}

TEST_CASE("config validation") {
  SearchConfig cfg;
  cfg.denom_bound = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.denom_bound = 1;
  cfg.numer_bound = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.numer_bound = 1;
  cfg.time_budget_seconds = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("certify_rank at n = 3") {
  const HeightContext ctx;
  SearchConfig cfg;
  cfg.denom_bound = 4;
  cfg.numer_bound = 20000;
  const RankCertificate c = certify_rank(Rational(3), cfg, ctx);
  CHECK(c.rank_lower_bound >= 3);
  CHECK(c.rank_lower_bound == c.gram.rank_lower_bound);
  const MordellCurve E(c.d);
  for (const auto& P : c.points) CHECK(on_curve(E, P.x(), P.y()));
  CHECK_THROWS_AS(certify_rank(Rational(2), cfg, ctx), DegenerateParameter);
}

TEST_CASE("rank bound is monotone in the search bounds") {
  const HeightContext ctx;
  for (const Rational& n0 : {Rational(3), Rational(1, 3), Rational(1, 5)}) {
    int last = 0;
    for (std::int64_t A : {1000, 100000, 3000000}) {
      SearchConfig cfg;
      cfg.denom_bound = 2;
      cfg.numer_bound = A;
      const int r = certify_rank(n0, cfg, ctx).rank_lower_bound;
      CHECK(r >= last);
      last = r;
    }
  }
}

TEST_CASE("linear combinations of kept points never raise the bound") {
  const HeightContext ctx;
  SearchConfig cfg;
  cfg.denom_bound = 2;
  cfg.numer_bound = 100000;
  const RankCertificate base = certify_rank(Rational(3), cfg, ctx);
  const MordellCurve E(base.d);
  const auto& P = base.points;
  std::vector<CurvePoint> extra{add(E, P[0], P[1]), subtract(E, scalar_mul(E, 2, P[2]), P[0]), scalar_mul(E, 3, P.back()),
                                CurvePoint::affine(E, Rational(0), *exact_sqrt(base.d))};
  const RankCertificate with = certify_rank(Rational(3), cfg, ctx, extra);
  CHECK(with.rank_lower_bound == base.rank_lower_bound);
}

TEST_CASE("scan keeps input order and records per-item failures") {
  const HeightContext ctx;
  SearchConfig cfg;
  cfg.denom_bound = 2;
  cfg.numer_bound = 5000;
  const std::vector<Rational> ns{Rational(3), Rational(2), Rational(1, 3), Rational(-4), Rational(5, 7)};
  const auto one = scan(ns, cfg, ctx, 1);
  const auto many = scan(ns, cfg, ctx, 3);
  REQUIRE(one.size() == ns.size());
  REQUIRE(many.size() == ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    CHECK(one[i].n0 == ns[i]);
    CHECK(many[i].n0 == ns[i]);
    CHECK(one[i].status == many[i].status);
    if (one[i].certificate) {
      CHECK(many[i].certificate->points == one[i].certificate->points);
      CHECK(many[i].certificate->rank_lower_bound == one[i].certificate->rank_lower_bound);
    }
  }
  CHECK(one[1].status == ScanEntry::Status::degenerate);
  CHECK(one[1].error == "degenerate parameter");
  CHECK(one[3].status == ScanEntry::Status::degenerate);
  CHECK(one[0].certificate->rank_lower_bound >= 3);
}
