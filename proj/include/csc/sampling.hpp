#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace csc {

// K of the N Nyquist grid points, strictly increasing, 1-based.
struct SampleSelector {
  std::vector<int> indices;  // sorted, distinct, in 1..grid_size
  int grid_size = 0;         // N

  int sample_count() const { return static_cast<int>(indices.size()); }
};

// Unbiased uniform draw from {0, ..., bound-1}. Rejection on the raw 64-bit
// stream, so results are identical on every platform (the distribution
// classes in <random> are not portable).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// K indices drawn uniformly without replacement from {1..N} by partial
// Fisher-Yates, returned sorted. Throws unless 1 <= K <= N.
SampleSelector draw_selector(std::mt19937_64& rng, int grid_size, int sample_count);

// Rows of X at the selected indices, in order; U X for the 0/1 selection
// matrix U. Throws on a row-count mismatch.
template <class Derived>
typename Derived::PlainObject select_rows(const SampleSelector& sel,
                                          const Eigen::MatrixBase<Derived>& X) {
  if (X.rows() != sel.grid_size)
    throw std::invalid_argument("select_rows: input has " + std::to_string(X.rows()) +
                                " rows, selector expects " + std::to_string(sel.grid_size));
  typename Derived::PlainObject out(static_cast<Eigen::Index>(sel.indices.size()), X.cols());
  for (std::size_t r = 0; r < sel.indices.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = X.row(sel.indices[r] - 1);
  return out;
}

}  // namespace csc
