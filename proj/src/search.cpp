#include "mordell/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "mordell/error.hpp"

namespace mordell {
namespace {

// Moduli for the residue sieve, most selective first.
constexpr std::array<std::uint32_t, 20> kModuli = {64, 63, 65, 11, 17, 19, 23, 29, 31, 37,
                                                   41, 43, 47, 53, 59, 61, 67, 71, 73, 79};
constexpr std::size_t kBlock = 1 << 14;

struct FilterTables {
  std::vector<std::vector<std::int32_t>> tables;
  std::vector<std::vector<bool>> square_mod;

  FilterTables() {
    for (std::uint32_t m : kModuli) {
      std::vector<bool> sq(m, false);
      for (std::uint64_t r = 0; r < m; ++r) sq[(r * r) % m] = true;
      square_mod.push_back(std::move(sq));
      tables.emplace_back(m, 0);
    }
  }

  // table[A mod m] = -1 iff A^3 + c is a square mod m.
  void rebuild(const Integer& c) {
    for (std::size_t k = 0; k < kModuli.size(); ++k) {
      const std::uint32_t m = kModuli[k];
      const auto cm = static_cast<std::uint64_t>(mpz_fdiv_ui(c.get_mpz_t(), m));
      for (std::uint64_t r = 0; r < m; ++r) {
        const std::uint64_t v = (r * r % m * r + cm) % m;
        tables[k][r] = square_mod[k][v] ? -1 : 0;
      }
    }
  }
};

std::uint32_t residue(std::int64_t a, std::uint32_t m) {
  const std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

bool same_x(const std::vector<CurvePoint>& pts, const CurvePoint& c) {
  return std::any_of(pts.begin(), pts.end(), [&](const CurvePoint& p) { return p.x() == c.x(); });
}

}  // namespace

void SearchConfig::validate() const {
  if (denom_bound < 1 || numer_bound < 1) throw DomainError("search bounds must be >= 1");
  if (!(time_budget_seconds > 0)) throw DomainError("search time budget must be positive");
}

SearchResult search_points(const IntegralModel& M, const SearchConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + std::chrono::duration<double>(cfg.time_budget_seconds);
  const MordellCurve E = M.curve();
  SearchResult out;
  FilterTables ft;
  std::vector<std::uint8_t> mask(kBlock);
  std::vector<simd::ResidueFilter> filters(kModuli.size());

  for (std::int64_t b = 1; b <= cfg.denom_bound; ++b) {
    const Integer b2 = Integer(b) * b;
    const Integer c = M.D * b2 * b2 * b2;
    ft.rebuild(c);
    // A^3 + c >= 0  <=>  A >= ceil(cbrt(-c))
    const Integer lo_exact = ceil_cbrt(Integer(-c));
    std::int64_t lo = -cfg.numer_bound;
    if (lo_exact > lo) {
      if (lo_exact > cfg.numer_bound) continue;
      lo = lo_exact.get_si();
    }
    const std::int64_t hi = cfg.numer_bound;
    for (std::int64_t a0 = lo; a0 <= hi; a0 += static_cast<std::int64_t>(kBlock)) {
      if (Clock::now() > deadline) {
        out.truncated = true;
        return out;
      }
      const auto count = static_cast<std::size_t>(std::min<std::int64_t>(kBlock, hi - a0 + 1));
      for (std::size_t k = 0; k < kModuli.size(); ++k)
        filters[k] = simd::ResidueFilter{kModuli[k], residue(a0, kModuli[k]), ft.tables[k]};
      const std::span<std::uint8_t> view(mask.data(), count);
      simd::sieve(cfg.backend, filters, view);
      for (std::size_t i = 0; i < count; ++i) {
        if (!view[i]) continue;
        ++out.survivors;
        const std::int64_t a = a0 + static_cast<std::int64_t>(i);
        if (std::gcd(a < 0 ? -a : a, b) != 1) continue;  // x = A/b^2 in lowest terms
        const Integer A(a);
        const auto y = exact_sqrt(Integer(A * A * A + c));
        if (!y) continue;
        const Rational x(A, b2);
        const Rational Y(*y, Integer(b2 * b));
        out.points.push_back(CurvePoint::affine(E, x, Y));
      }
    }
  }
  return out;
}

RankCertificate certify_rank(const Rational& n0, const SearchConfig& cfg, const HeightContext& ctx,
                             const std::vector<CurvePoint>& extra) {
  const family::Specialization spec = family::specialize(n0);
  if (spec.flags.degenerate) throw DegenerateParameter("degenerate parameter: " + spec.reason);
  const MordellCurve& E = *spec.curve;
  const IntegralModel M = integralize(E, ctx);
  const MordellCurve ME = M.curve();
  PrecisionScope scope(ctx.working_digits());

  std::vector<CurvePoint> candidates;
  for (const auto& P : spec.points) candidates.push_back(M.to_model(P));
  const SearchResult found = search_points(M, cfg);
  candidates.insert(candidates.end(), found.points.begin(), found.points.end());
  for (const auto& P : extra) candidates.push_back(M.to_model(P));

  std::vector<CurvePoint> basis;
  std::vector<Real> heights;
  RealMatrix gram;
  const Real threshold(kIndependenceThreshold);
  for (const auto& c : candidates) {
    // Cheap rejections first: torsion (x = 0 on these curves, or finite
    // order in general) and +-copies of points already kept.
    if (c.is_infinity() || c.x() == 0) continue;
    if (same_x(basis, c)) continue;
    if (is_torsion(ME, c)) continue;
    const Real hc = canonical_height(M, c, ctx);
    std::vector<Real> row;
    row.reserve(basis.size() + 1);
    for (std::size_t i = 0; i < basis.size(); ++i)
      row.push_back((canonical_height(M, add(ME, basis[i], c), ctx) - heights[i] - hc) / Real(2L));
    RealMatrix trial = gram;
    for (std::size_t i = 0; i < basis.size(); ++i) trial[i].push_back(row[i]);
    row.push_back(hc);
    trial.push_back(row);
    const auto eig = symmetric_eigenvalues(trial);
    if (!(eig.front() > threshold)) continue;
    basis.push_back(c);
    heights.push_back(hc);
    gram = std::move(trial);
  }

  RankCertificate cert;
  cert.n0 = n0;
  cert.d = E.d();
  for (const auto& P : basis) cert.points.push_back(M.from_model(P));
  cert.points_found = found.points.size();
  cert.search_truncated = found.truncated;
  if (!gram.empty()) {
    cert.gram = summarize_gram(std::move(gram), ctx);
    cert.rank_lower_bound = cert.gram.rank_lower_bound;
  }
  return cert;
}

std::vector<ScanEntry> scan(const std::vector<Rational>& n_list, const SearchConfig& cfg, const HeightContext& ctx,
                            unsigned jobs) {
  std::vector<ScanEntry> out(n_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    // Own context per worker; the factor cache is shared (it is thread-safe).
    const HeightContext local(ctx.precision(), ctx.normalization(), ctx.shared_cache());
    for (std::size_t i = next++; i < n_list.size(); i = next++) {
      ScanEntry& e = out[i];
      e.n0 = n_list[i];
      try {
        e.certificate = certify_rank(n_list[i], cfg, local);
      } catch (const DegenerateParameter&) {
        e.status = ScanEntry::Status::degenerate;
        e.error = "degenerate parameter";
      } catch (const std::exception& ex) {
        e.status = ScanEntry::Status::failed;
        e.error = ex.what();
      }
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, n_list.size()))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace mordell
