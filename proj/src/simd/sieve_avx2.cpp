#include "mordell/sieve.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include <vector>

namespace mordell::simd {

#if defined(__AVX2__)

void sieve_avx2(std::span<const ResidueFilter> filters, std::span<std::uint8_t> out) {
  const std::size_t n = out.size();
  const std::size_t full = n - n % 8;
  std::vector<std::uint32_t> base;
  base.reserve(filters.size());
  for (const auto& f : filters) base.push_back(f.start % f.modulus);

  const __m256i lanes = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  for (std::size_t i = 0; i < full; i += 8) {
    __m256i acc = _mm256_set1_epi32(-1);
    std::size_t k = 0;
    for (; k < filters.size(); ++k) {
      const auto m = static_cast<int>(filters[k].modulus);
      // base + lane < 2m, one conditional subtraction brings it into range.
      __m256i r = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(base[k])), lanes);
      const __m256i over = _mm256_cmpgt_epi32(r, _mm256_set1_epi32(m - 1));
      r = _mm256_sub_epi32(r, _mm256_and_si256(over, _mm256_set1_epi32(m)));
      const __m256i t = _mm256_i32gather_epi32(filters[k].table.data(), r, 4);
      acc = _mm256_and_si256(acc, t);
      base[k] += 8;
      if (base[k] >= filters[k].modulus) base[k] -= filters[k].modulus;
      if (_mm256_testz_si256(acc, acc)) {
        ++k;
        break;
      }
    }
    // Filters skipped by the early exit still advance.
    for (; k < filters.size(); ++k) {
      base[k] += 8;
      if (base[k] >= filters[k].modulus) base[k] -= filters[k].modulus;
    }
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(acc));
    for (int j = 0; j < 8; ++j) out[i + static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((mask >> j) & 1);
  }
  if (full < n) {
    std::vector<ResidueFilter> tail(filters.begin(), filters.end());
    for (std::size_t k = 0; k < tail.size(); ++k) tail[k].start = base[k];
    sieve_scalar(tail, out.subspan(full));
  }
}

bool avx2_compiled() { return true; }

#else

void sieve_avx2(std::span<const ResidueFilter> filters, std::span<std::uint8_t> out) { sieve_scalar(filters, out); }

bool avx2_compiled() { return false; }

#endif

}  // namespace mordell::simd
