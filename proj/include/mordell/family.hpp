#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mordell/curve.hpp"
#include "mordell/ratfunc.hpp"

namespace mordell::family {

/// A polynomial factor raised to a power, coefficients ascending.
struct Factor {
  std::vector<long> coeffs;
  int exponent = 1;
};

/// A coordinate formula exactly as printed: (num_scale / den_scale) *
/// prod(num factors) / prod(den factors). Every integer in here is a
/// "printed coefficient" and can be perturbed by mutation tests.
struct FactoredExpr {
  long num_scale = 1;
  long den_scale = 1;
  std::vector<Factor> num;
  std::vector<Factor> den;

  RatFunc evaluate() const;
  /// Number of integer slots (scales, coefficients and exponents).
  std::size_t slot_count() const;
  /// Adds delta to the slot with the given flat index.
  void perturb(std::size_t slot, long delta);
};

/// The printed formulas of the K and N stages. Stage M is generated from
/// a = m^2 - 1 directly and has nothing to transcribe.
struct Transcription {
  FactoredExpr k_d, k_p2x, k_p2y;
  /// m(k) = (k-2)^2 / ((k-1)(k+1)), the parametrization of m(m+3) = u^2.
  FactoredExpr k_m;
  FactoredExpr n_d;
  std::array<FactoredExpr, 3> n_px, n_py;

  static const Transcription& printed();

  /// Named access used by mutation hooks: "d", "P1.x", ..., "P3.y" for
  /// stage N, "K.d", "K.P2.x", "K.P2.y", "K.m" for stage K.
  FactoredExpr* find(const std::string& name);
  std::vector<std::string> names() const;
};

enum class StageId { M, K, N };

struct StagePoint {
  RatFunc x, y;
};

struct FamilyStage {
  StageId stage;
  char parameter;
  RatFunc curve_d;
  std::vector<StagePoint> points;
};

FamilyStage stage_m();
FamilyStage stage_k(const Transcription& t = Transcription::printed());
FamilyStage stage_n(const Transcription& t = Transcription::printed());

/// k as a function of n, reconstructed from the conic u^2 = -(2k^2+4k-7)
/// through (1, 1); the branch is the one that reproduces stage N exactly.
/// Throws DomainError when neither branch matches.
RatFunc recover_k_of_n(const Transcription& t = Transcription::printed());

struct IdentityCheck {
  std::string name;
  std::string anchor;  // where the identity comes from in the construction
  bool passed = false;
  std::string residual;  // nonzero residual (or reason) when failed
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

VerificationReport verify_all_identities(const Transcription& t = Transcription::printed());

struct Flags {
  bool degenerate = false;
  std::vector<std::pair<int, int>> coincident_points;  // 0-based index pairs
  std::vector<int> torsion_hits;
};

struct Specialization {
  Rational n0;
  std::optional<MordellCurve> curve;  // empty when degenerate
  std::vector<CurvePoint> points;     // P1, P2, P3 when not degenerate
  Flags flags;
  std::string reason;  // why it is degenerate
};

/// Rational parameters where some denominator of the stage-N data vanishes.
std::vector<Rational> degenerate_parameters(const Transcription& t = Transcription::printed());

Specialization specialize(const Rational& n0, const Transcription& t = Transcription::printed());

}  // namespace mordell::family
