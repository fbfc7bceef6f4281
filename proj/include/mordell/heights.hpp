#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mordell/curve.hpp"
#include "mordell/factor.hpp"
#include "mordell/linalg.hpp"
#include "mordell/real.hpp"

namespace mordell {

/// Two conventions for the canonical height differ by a factor of 2.
/// `full` is the x-coordinate convention, h^(P) = lim h(x(2^N P))/4^N,
/// which gives the regulator 83.3621963770719 at n = 3; `halved` is the
/// point-height convention lim h(x(2^N P))/(2*4^N).
enum class Normalization { full, halved };

/// Eigenvalues of the pairing matrix above this count toward the rank bound.
inline constexpr double kIndependenceThreshold = 1e-4;

class HeightContext {
 public:
  /// precision in decimal digits, at least 20. A fresh factor cache is
  /// created unless one is supplied (share it between workers, or not).
  explicit HeightContext(unsigned precision = 50, Normalization normalization = Normalization::full,
                         std::shared_ptr<FactorCache> cache = nullptr);

  unsigned precision() const { return precision_; }
  Normalization normalization() const { return normalization_; }
  FactorCache& factor_cache() const { return *cache_; }
  const std::shared_ptr<FactorCache>& shared_cache() const { return cache_; }

  /// Internal working digits (precision plus guard digits).
  unsigned working_digits() const { return precision_ + 20; }
  /// 2 for full, 1 for halved.
  long scale() const { return normalization_ == Normalization::full ? 2 : 1; }

 private:
  unsigned precision_;
  Normalization normalization_;
  std::shared_ptr<FactorCache> cache_;
};

/// Y^2 = X^3 + D with D in Z, sixth-power free, related to the source curve
/// by x = X/u^2, y = Y/u^3.
struct IntegralModel {
  Integer D;
  Rational u;
  /// Factorization of the model discriminant |-432 D^2|.
  Factorization prime_factors_of_disc;

  MordellCurve curve() const { return MordellCurve(Rational(D)); }
  /// Source-curve point -> model point.
  CurvePoint to_model(const CurvePoint& P) const;
  /// Model point -> source-curve point on y^2 = x^3 + D/u^6.
  CurvePoint from_model(const CurvePoint& Q) const;
};

IntegralModel integralize(const MordellCurve& E, const HeightContext& ctx);

/// log max(|num x|, |den x|). Throws DomainError at infinity.
Real naive_height(const CurvePoint& P);

/// Archimedean local height on the model (Tate's series after translating
/// x so the real locus stays away from x = 0), discriminant-free
/// normalization, scaled per ctx.
Real local_height_arch(const IntegralModel& M, const CurvePoint& P, const HeightContext& ctx);

/// lambda_p(P) = coefficient * log p.
struct LocalHeight {
  Integer p;
  Rational coefficient;
  Real value() const;
};

/// Non-archimedean local height at p, discriminant-free normalization,
/// scaled per ctx. Uses the smallest multiple mP with nonsingular reduction
/// and the quasi-parallelogram relation for psi_m. P must not be torsion.
LocalHeight local_height_nonarch(const IntegralModel& M, const CurvePoint& P, const Integer& p,
                                 const HeightContext& ctx);

struct HeightBreakdown {
  Real archimedean;
  std::vector<LocalHeight> bad_primes;  // p | 6D
  Real other_primes;                    // denominator primes away from 6D
  Real total;
};

/// Model point P (on M.curve()). Torsion points give an all-zero breakdown.
HeightBreakdown canonical_height_breakdown(const IntegralModel& M, const CurvePoint& P, const HeightContext& ctx);

Real canonical_height(const IntegralModel& M, const CurvePoint& model_point, const HeightContext& ctx);
/// Source-curve point; integralizes E on the way.
Real canonical_height(const MordellCurve& E, const CurvePoint& P, const HeightContext& ctx);

/// h(x(2^N P)) / 4^N in ctx's normalization. Slow, coarse cross-check.
Real doubling_limit_height(const MordellCurve& E, const CurvePoint& P, unsigned N, const HeightContext& ctx);

/// <P, Q> = (h^(P+Q) - h^(P) - h^(Q)) / 2.
Real nt_pairing(const MordellCurve& E, const CurvePoint& P, const CurvePoint& Q, const HeightContext& ctx);

struct GramReport {
  RealMatrix matrix;
  Real regulator;
  Real min_eigenvalue;
  std::vector<Real> eigenvalues;  // ascending
  int rank_lower_bound = 0;
  unsigned precision = 0;
};

/// Pairing matrix of the points, its determinant, spectrum and the number
/// of eigenvalues above kIndependenceThreshold. Throws DomainError on an
/// empty list.
GramReport gram_regulator(const MordellCurve& E, const std::vector<CurvePoint>& points, const HeightContext& ctx);

/// Same, for points already mapped onto an integral model (the search
/// reuses one model across many candidate sets).
/// Determinant, spectrum and rank bound of an already-assembled pairing matrix.
GramReport summarize_gram(RealMatrix matrix, const HeightContext& ctx);

GramReport gram_from_model(const IntegralModel& M, const std::vector<CurvePoint>& model_points,
                           const HeightContext& ctx);

}  // namespace mordell
