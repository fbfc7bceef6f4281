#include "mordell/factor.hpp"

#include <algorithm>
#include <mutex>

#include "mordell/error.hpp"

namespace mordell {
namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool strong_probable_prime(const Integer& n, const Integer& base) {
  // n - 1 = d * 2^s with d odd
  Integer d = n - 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Integer n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// One Brent run with polynomial x^2 + c. Returns a nontrivial factor or 0
// when this c cycles without splitting n. `budget` is decremented.
Integer brent(const Integer& n, unsigned long c, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 128;
  Integer y = 2, x, ys, q = 1, g = 1;
  std::uint64_t r = 1;
  auto step = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        step(y);
        Integer diff = x - y;
        q *= abs(diff);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += lim;
      if (lim > budget) {
        budget = 0;
        if (g == 1) return 0;
      } else {
        budget -= lim;
      }
    }
    if (budget == 0 && g == 1) return 0;
    r *= 2;
  }
  if (g == n) {
    // batch overshot: step one at a time from the saved point
    do {
      step(ys);
      g = gcd(abs(Integer(x - ys)), n);
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

void split(const Integer& n, std::uint64_t budget, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    const Integer r = isqrt(n);
    std::map<Integer, unsigned> sub;
    split(r, budget, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  std::uint64_t remaining = budget;
  for (unsigned long c = 1; remaining > 0; ++c) {
    const Integer g = brent(n, c, remaining);
    if (g != 0) {
      split(g, budget, out);
      split(n / g, budget, out);
      return;
    }
  }
  throw FactorizationTimeout("Pollard rho budget exhausted on composite " + n.get_str(), n.get_str());
}

}  // namespace

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  static const unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned p : kBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  for (unsigned p : kBases)
    if (!strong_probable_prime(n, Integer(p))) return false;
  return true;
}

Factorization factorize(const Integer& n_in, std::uint64_t rho_budget) {
  if (n_in == 0) throw DomainError("cannot factor zero");
  Integer n = abs(n_in);
  std::map<Integer, unsigned> acc;
  for (std::uint32_t p : small_primes()) {
    if (n == 1) break;
    if (static_cast<Integer>(p) * p > n) {
      acc[n] += 1;
      n = 1;
      break;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      Integer rest;
      const Integer prime(p);
      const auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
      acc[prime] += static_cast<unsigned>(e);
      n = rest;
    }
  }
  split(n, rho_budget, acc);
  return {acc.begin(), acc.end()};
}

Integer expand(const Factorization& f) {
  Integer r = 1;
  for (const auto& [p, e] : f) r *= pow(p, e);
  return r;
}

Factorization FactorCache::get(const Integer& n) {
  const Integer key = abs(n);
  {
    std::shared_lock lock(mu_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  Factorization f = factorize(key, rho_budget_);
  std::unique_lock lock(mu_);
  return table_.emplace(key, std::move(f)).first->second;
}

std::size_t FactorCache::size() const {
  std::shared_lock lock(mu_);
  return table_.size();
}

std::map<Integer, Factorization> FactorCache::entries() const {
  std::shared_lock lock(mu_);
  return table_;
}

}  // namespace mordell
