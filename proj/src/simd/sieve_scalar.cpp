#include "mordell/sieve.hpp"

#include <vector>

namespace mordell::simd {

void sieve_scalar(std::span<const ResidueFilter> filters, std::span<std::uint8_t> out) {
  std::vector<std::uint32_t> residue;
  residue.reserve(filters.size());
  for (const auto& f : filters) residue.push_back(f.start % f.modulus);
  for (auto& flag : out) {
    std::uint8_t keep = 1;
    for (std::size_t k = 0; k < filters.size(); ++k) {
      if (keep && filters[k].table[residue[k]] == 0) keep = 0;
      if (++residue[k] == filters[k].modulus) residue[k] = 0;
    }
    flag = keep;
  }
}

}  // namespace mordell::simd
