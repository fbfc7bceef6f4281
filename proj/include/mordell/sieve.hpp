#pragma once

// Quadratic-residue sieve for the point search: for a block of consecutive
// numerators A, flag the ones where A^3 + c can still be a perfect square
// modulo every filter modulus. The scalar kernel is the reference; the AVX2
// kernel must produce byte-identical output.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mordell::simd {

/// table[(start + i) mod modulus] is all-ones (-1) when block index i may
/// survive, 0 otherwise. modulus must be >= 8.
struct ResidueFilter {
  std::uint32_t modulus = 0;
  std::uint32_t start = 0;
  std::span<const std::int32_t> table;
};

enum class Backend { scalar, avx2 };

std::string_view name(Backend b);

/// True when the CPU (and the build) supports the AVX2 kernel.
bool avx2_available();

/// Fastest available backend. MORDELL_SIMD=scalar forces the reference.
Backend best_backend();

/// out[i] = 1 iff every filter passes index i, else 0.
void sieve_scalar(std::span<const ResidueFilter> filters, std::span<std::uint8_t> out);
void sieve_avx2(std::span<const ResidueFilter> filters, std::span<std::uint8_t> out);
void sieve(Backend b, std::span<const ResidueFilter> filters, std::span<std::uint8_t> out);

}  // namespace mordell::simd
