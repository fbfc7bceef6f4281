#include <doctest.h>

#include <random>

#include "mordell/sieve.hpp"

using namespace mordell::simd;

namespace {

struct Tables {
  std::vector<std::vector<std::int32_t>> data;
  std::vector<ResidueFilter> filters;
};

Tables random_tables(std::mt19937& rng) {
  static const std::uint32_t moduli[] = {8, 9, 11, 13, 17, 64, 63, 65, 79, 97, 257};
  Tables t;
  std::uniform_int_distribution<int> nf(1, 8), bit(0, 99);
  const int count = nf(rng);
  for (int i = 0; i < count; ++i) {
    const std::uint32_t m = moduli[rng() % std::size(moduli)];
    std::vector<std::int32_t> tab(m);
    const int density = 30 + bit(rng) / 2;
    for (auto& v : tab) v = bit(rng) < density ? -1 : 0;
    t.data.push_back(std::move(tab));
  }
  for (const auto& tab : t.data)
    t.filters.push_back(ResidueFilter{static_cast<std::uint32_t>(tab.size()), static_cast<std::uint32_t>(rng() % tab.size()),
                                      std::span<const std::int32_t>(tab)});
  return t;
}

}  // namespace

TEST_CASE("scalar kernel follows the definition") {
  const std::vector<std::int32_t> tab{-1, 0, 0, -1, 0, 0, 0, 0, -1};
  const ResidueFilter f{9, 7, tab};
  std::vector<std::uint8_t> out(20);
  sieve_scalar(std::span<const ResidueFilter>(&f, 1), out);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == (tab[(7 + i) % 9] == -1 ? 1 : 0));
}

TEST_CASE("AVX2 kernel is byte-identical to the scalar reference") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const Tables t = random_tables(rng);
    const std::size_t len = rng() % 5000;  // includes lengths not divisible by 8
    std::vector<std::uint8_t> a(len, 7), b(len, 9);
    sieve_scalar(t.filters, a);
    sieve_avx2(t.filters, b);
    REQUIRE(a == b);
  }
}

TEST_CASE("dispatch") {
  CHECK(name(Backend::scalar) == "scalar");
  CHECK(name(Backend::avx2) == "avx2");
  if (!avx2_available()) CHECK(best_backend() == Backend::scalar);
  std::mt19937 rng(5);
  const Tables t = random_tables(rng);
  std::vector<std::uint8_t> a(1000), b(1000);
  sieve(Backend::scalar, t.filters, a);
  sieve(best_backend(), t.filters, b);
  CHECK(a == b);
}

TEST_CASE("empty filter list passes everything") {
  std::vector<std::uint8_t> a(33, 0), b(33, 0);
  sieve_scalar({}, a);
  sieve_avx2({}, b);
  CHECK(a == std::vector<std::uint8_t>(33, 1));
  CHECK(b == a);
}
