#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mordell/family.hpp"
#include "mordell/heights.hpp"
#include "mordell/sieve.hpp"

namespace mordell {

/// Point search window on the integral model: x = A / b^2 with
/// 1 <= b <= denom_bound and |A| <= numer_bound.
struct SearchConfig {
  std::int64_t denom_bound = 8;
  std::int64_t numer_bound = 1'000'000;
  double time_budget_seconds = 600.0;
  simd::Backend backend = simd::best_backend();

  /// Throws DomainError unless both bounds are >= 1 and the budget is positive.
  void validate() const;
};

struct SearchResult {
  /// Model points, one per x (y >= 0), in search order: b ascending, then A.
  std::vector<CurvePoint> points;
  bool truncated = false;
  std::uint64_t survivors = 0;  // numerators that passed the residue sieve
};

SearchResult search_points(const IntegralModel& M, const SearchConfig& cfg);

struct RankCertificate {
  Rational n0;
  Rational d;
  std::vector<CurvePoint> points;  // on y^2 = x^3 + d
  GramReport gram;
  int rank_lower_bound = 0;
  std::size_t points_found = 0;  // raw search hits before filtering
  bool search_truncated = false;
};

/// Greedy certificate: P1, P2, P3, then each search hit (then `extra`
/// source-curve candidates), keeping a point only if the extended pairing
/// matrix stays above the independence threshold. Throws
/// DegenerateParameter for degenerate n0.
RankCertificate certify_rank(const Rational& n0, const SearchConfig& cfg, const HeightContext& ctx,
                             const std::vector<CurvePoint>& extra = {});

struct ScanEntry {
  enum class Status { ok, degenerate, failed };
  Rational n0;
  Status status = Status::ok;
  std::optional<RankCertificate> certificate;
  std::string error;
};

/// certify_rank over the list on `jobs` worker threads. Output order equals
/// input order; per-item failures are captured, never thrown.
std::vector<ScanEntry> scan(const std::vector<Rational>& n_list, const SearchConfig& cfg, const HeightContext& ctx,
                            unsigned jobs = 1);

}  // namespace mordell
