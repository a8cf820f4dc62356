#include "csc/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace csc {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound representable in 64 bits; reject above it.
  const std::uint64_t rem = (max % bound + 1) % bound;
  const std::uint64_t limit = max - rem;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

SampleSelector draw_selector(std::mt19937_64& rng, int grid_size, int sample_count) {
  if (grid_size < 1) throw std::invalid_argument("draw_selector: grid size must be positive");
  if (sample_count < 1 || sample_count > grid_size)
    throw std::invalid_argument("draw_selector: sample count must lie in 1..N");
  std::vector<int> pool(grid_size);
  std::iota(pool.begin(), pool.end(), 1);
  for (int l = 0; l < sample_count; ++l) {
    const auto j = l + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(grid_size - l)));
    std::swap(pool[l], pool[j]);
  }
  SampleSelector sel;
  sel.grid_size = grid_size;
  sel.indices.assign(pool.begin(), pool.begin() + sample_count);
  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

}  // namespace csc
