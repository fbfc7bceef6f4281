#pragma once

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "mordell/arith.hpp"

namespace mordell {

using Factorization = std::vector<std::pair<Integer, unsigned>>;  // ascending primes

/// Strong probable-prime test: deterministic for n < 3.3e24 (first 13 prime
/// bases), a strong-probable-prime verdict above that.
bool is_probable_prime(const Integer& n);

/// Complete factorization of |n| (n != 0): trial division up to 10^6, then
/// Pollard rho with Brent's cycle detection. `rho_budget` caps the rho
/// iterations spent on each composite; exceeding it throws
/// FactorizationTimeout naming the composite.
Factorization factorize(const Integer& n, std::uint64_t rho_budget = 100'000'000);

/// Product of p^e over a factorization.
Integer expand(const Factorization& f);

/// Memo table for factorizations, safe for concurrent readers with
/// exclusive writers.
class FactorCache {
 public:
  explicit FactorCache(std::uint64_t rho_budget = 100'000'000) : rho_budget_(rho_budget) {}
  Factorization get(const Integer& n);
  std::size_t size() const;
  /// Snapshot, for invariant checks.
  std::map<Integer, Factorization> entries() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<Integer, Factorization> table_;
  std::uint64_t rho_budget_;
};

}  // namespace mordell
