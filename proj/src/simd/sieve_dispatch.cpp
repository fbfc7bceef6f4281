#include <cstdlib>
#include <string>

#include "mordell/sieve.hpp"

namespace mordell::simd {

bool avx2_compiled();  // sieve_avx2.cpp

std::string_view name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = avx2_compiled() && __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Backend best_backend() {
  if (const char* env = std::getenv("MORDELL_SIMD"); env != nullptr && std::string(env) == "scalar")
    return Backend::scalar;
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

void sieve(Backend b, std::span<const ResidueFilter> filters, std::span<std::uint8_t> out) {
  if (b == Backend::avx2 && avx2_available()) {
    sieve_avx2(filters, out);
  } else {
    sieve_scalar(filters, out);
  }
}

}  // namespace mordell::simd
