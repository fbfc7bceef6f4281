#include "mordell/heights.hpp"

#include <cmath>

#include "mordell/error.hpp"

namespace mordell {
namespace {

constexpr unsigned kMaxMultiplier = 64;
constexpr int kMaxSeriesTerms = 20000;

Real log_of(const Integer& z) { return log(z); }

Integer model_disc_abs(const Integer& D) { return 432 * D * D; }

}  // namespace

HeightContext::HeightContext(unsigned precision, Normalization normalization, std::shared_ptr<FactorCache> cache)
    : precision_(precision), normalization_(normalization), cache_(std::move(cache)) {
  if (precision_ < 20) throw DomainError("height precision must be at least 20 digits");
  if (!cache_) cache_ = std::make_shared<FactorCache>();
}

CurvePoint IntegralModel::to_model(const CurvePoint& P) const {
  if (P.is_infinity()) return P;
  const Rational u2 = u * u;
  return CurvePoint::affine(curve(), P.x() * u2, P.y() * u2 * u);
}

CurvePoint IntegralModel::from_model(const CurvePoint& Q) const {
  if (Q.is_infinity()) return Q;
  const Rational u2 = u * u;
  const Rational u6 = u2 * u2 * u2;
  return CurvePoint::affine(MordellCurve(Rational(D) / u6), Q.x() / u2, Q.y() / (u2 * u));
}

IntegralModel integralize(const MordellCurve& E, const HeightContext& ctx) {
  const Rational& d = E.d();
  // Smallest u with d u^6 integral: u = prod p^ceil(e/6) over p^e || den(d).
  Integer u_int = 1;
  for (const auto& [p, e] : ctx.factor_cache().get(d.get_den())) u_int *= pow(p, (e + 5) / 6);
  Rational scaled = d * pow(Rational(u_int), 6);
  Integer D = scaled.get_num();
  Rational u(u_int);
  // Remove sixth powers from D.
  for (const auto& [p, e] : ctx.factor_cache().get(D)) {
    const unsigned k = e / 6;
    if (k == 0) continue;
    D /= pow(p, 6 * k);
    u /= pow(Rational(p), k);
  }
  IntegralModel M{D, u, {}};
  M.prime_factors_of_disc = ctx.factor_cache().get(model_disc_abs(D));
  return M;
}

Real naive_height(const CurvePoint& P) {
  if (P.is_infinity()) throw DomainError("naive height of the point at infinity");
  const Rational& x = P.x();
  const Integer num = abs(x.get_num());
  const Integer& den = x.get_den();
  return log_of(num > den ? num : den);
}

Real local_height_arch(const IntegralModel& M, const CurvePoint& P, const HeightContext& ctx) {
  if (P.is_infinity()) throw DomainError("local height of the point at infinity");
  PrecisionScope scope(ctx.working_digits());
  const Real D(M.D);
  // e = real root of x^3 + D; shift so that x' = x + r >= max(1, |e|) on E(R).
  const Real e = -cbrt(D);
  const Real r = max(Real(1L), abs(e)) - e;
  const Real r2 = r * r;
  const Real a6 = D - r2 * r;  // y^2 = x'^3 - 3r x'^2 + 3r^2 x' + (D - r^3)
  const Real b2 = Real(-12L) * r;
  const Real b4 = Real(6L) * r2;
  const Real b6 = Real(4L) * a6;
  const Real b8 = Real(-12L) * r * a6 - Real(9L) * r2 * r2;

  const Real x = Real(P.x()) + r;
  if (x.sign() <= 0) throw DomainError("translated x is not positive; point not on the real locus");
  Real t = Real(1L) / x;
  Real sum(0L);
  Real weight(1L);  // 4^-n
  const Real eps = pow10(-static_cast<long>(ctx.precision() + 10));
  const Real margin = Real(10L) + log(abs(D) + Real(1L));
  bool converged = false;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const Real t2 = t * t;
    const Real w = t * (Real(4L) + t * (b2 + t * (Real(2L) * b4 + t * b6)));
    const Real z = Real(1L) - t2 * (b4 + t * (Real(2L) * b6 + t * b8));
    if (z.sign() <= 0 || !z.is_finite()) throw DomainError("Tate series left its domain (z <= 0)");
    const Real lz = log(z);
    sum += weight * lz;
    if (weight * (abs(lz) + margin) < eps) {
      converged = true;
      break;
    }
    weight /= Real(4L);
    t = w / z;
  }
  if (!converged) throw BudgetExceeded("archimedean height series did not converge; check precision");
  const Real lambda = log(x) / Real(2L) + sum / Real(8L);
  return lambda * Real(ctx.scale());
}

Real LocalHeight::value() const {
  if (coefficient == 0) return Real(0L);
  return Real(coefficient) * log(p);
}

LocalHeight local_height_nonarch(const IntegralModel& M, const CurvePoint& P, const Integer& p,
                                 const HeightContext& ctx) {
  if (P.is_infinity()) throw DomainError("local height of the point at infinity");
  const MordellCurve E = M.curve();
  CurvePoint Q = P;
  for (unsigned m = 1; m <= kMaxMultiplier; ++m) {
    if (m > 1) Q = add(E, Q, P);
    if (Q.is_infinity()) throw DomainError("torsion point: local heights are not decomposed");
    const Rational& x = Q.x();
    const Rational& y = Q.y();
    const long vx = x == 0 ? 1 : valuation(x, p);
    // Nonsingular reduction: x has a pole at p (reduces to O) or one of the
    // partials 3x^2, 2y is a p-unit.
    const bool nonsingular = vx < 0 || (x != 0 && valuation(Rational(3 * x * x), p) <= 0) ||
                             (y != 0 && valuation(Rational(2 * y), p) <= 0);
    if (!nonsingular) continue;
    Rational c(std::max(0L, -vx), 2);
    if (m > 1) c -= valuation(division_value(E, P, m), p);
    c /= static_cast<long>(m * m);
    c *= ctx.scale();
    return LocalHeight{p, c};
  }
  throw BudgetExceeded("no multiple up to " + std::to_string(kMaxMultiplier) + " of the point reduces nonsingularly at p = " +
                       p.get_str());
}

HeightBreakdown canonical_height_breakdown(const IntegralModel& M, const CurvePoint& P, const HeightContext& ctx) {
  PrecisionScope scope(ctx.working_digits());
  const MordellCurve E = M.curve();
  HeightBreakdown out{Real(0L), {}, Real(0L), Real(0L)};
  if (is_torsion(E, P)) return out;
  out.archimedean = local_height_arch(M, P, ctx);
  Integer six_d = 6 * M.D;
  for (const auto& [p, e] : M.prime_factors_of_disc) {
    (void)e;
    out.bad_primes.push_back(local_height_nonarch(M, P, p, ctx));
  }
  // Primes of the x-denominator away from 6D reduce to O: 1/2 v_p(den x) log p.
  Integer b = isqrt(P.x().get_den());
  Integer g;
  for (;;) {
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), six_d.get_mpz_t());
    if (g == 1) break;
    b /= g;
  }
  if (b > 1) out.other_primes = log(b) * Real(ctx.scale());
  out.total = out.archimedean + out.other_primes;
  for (const auto& l : out.bad_primes) out.total += l.value();
  return out;
}

Real canonical_height(const IntegralModel& M, const CurvePoint& model_point, const HeightContext& ctx) {
  return canonical_height_breakdown(M, model_point, ctx).total;
}

Real canonical_height(const MordellCurve& E, const CurvePoint& P, const HeightContext& ctx) {
  const IntegralModel M = integralize(E, ctx);
  return canonical_height(M, M.to_model(P), ctx);
}

Real doubling_limit_height(const MordellCurve& E, const CurvePoint& P, unsigned N, const HeightContext& ctx) {
  PrecisionScope scope(ctx.working_digits());
  CurvePoint Q = P;
  for (unsigned i = 0; i < N; ++i) Q = add(E, Q, Q);
  if (Q.is_infinity()) return Real(0L);
  Real h = naive_height(Q);
  for (unsigned i = 0; i < N; ++i) h /= Real(4L);
  return ctx.normalization() == Normalization::full ? h : h / Real(2L);
}

Real nt_pairing(const MordellCurve& E, const CurvePoint& P, const CurvePoint& Q, const HeightContext& ctx) {
  PrecisionScope scope(ctx.working_digits());
  const IntegralModel M = integralize(E, ctx);
  const CurvePoint mp = M.to_model(P);
  const CurvePoint mq = M.to_model(Q);
  const MordellCurve ME = M.curve();
  const Real s = canonical_height(M, add(ME, mp, mq), ctx);
  return (s - canonical_height(M, mp, ctx) - canonical_height(M, mq, ctx)) / Real(2L);
}

GramReport gram_from_model(const IntegralModel& M, const std::vector<CurvePoint>& pts, const HeightContext& ctx) {
  if (pts.empty()) throw DomainError("regulator of an empty point list");
  PrecisionScope scope(ctx.working_digits());
  const MordellCurve E = M.curve();
  const std::size_t r = pts.size();
  std::vector<Real> diag;
  diag.reserve(r);
  for (const auto& P : pts) diag.push_back(canonical_height(M, P, ctx));
  RealMatrix g(r, std::vector<Real>(r));
  for (std::size_t i = 0; i < r; ++i) {
    g[i][i] = diag[i];
    for (std::size_t j = i + 1; j < r; ++j) {
      const Real s = canonical_height(M, add(E, pts[i], pts[j]), ctx);
      g[i][j] = (s - diag[i] - diag[j]) / Real(2L);
      g[j][i] = g[i][j];
    }
  }
  return summarize_gram(std::move(g), ctx);
}

GramReport summarize_gram(RealMatrix g, const HeightContext& ctx) {
  if (g.empty()) throw DomainError("regulator of an empty point list");
  PrecisionScope scope(ctx.working_digits());
  GramReport rep;
  rep.precision = ctx.precision();
  rep.regulator = determinant(g);
  rep.eigenvalues = symmetric_eigenvalues(g);
  rep.min_eigenvalue = rep.eigenvalues.front();
  const Real threshold(kIndependenceThreshold);
  for (const auto& ev : rep.eigenvalues)
    if (ev > threshold) ++rep.rank_lower_bound;
  rep.matrix = std::move(g);
  return rep;
}

GramReport gram_regulator(const MordellCurve& E, const std::vector<CurvePoint>& points, const HeightContext& ctx) {
  if (points.empty()) throw DomainError("regulator of an empty point list");
  const IntegralModel M = integralize(E, ctx);
  std::vector<CurvePoint> mp;
  mp.reserve(points.size());
  for (const auto& P : points) mp.push_back(M.to_model(P));
  return gram_from_model(M, mp, ctx);
}

}  // namespace mordell
