#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace spoamp {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Fixed-block pairwise summation. Terms are accumulated linearly inside
// blocks of kReductionBlock elements and the per-block partials are combined
// by recursive halving, so the rounding pattern depends only on the term
// order, never on how the work is scheduled.
inline constexpr Index kReductionBlock = 4096;

namespace detail {

template <typename T>
T combine_pairwise(const T* partials, Index count) {
  if (count == 1) return partials[0];
  const Index half = count / 2;
  return combine_pairwise(partials, half) +
         combine_pairwise(partials + half, count - half);
}

}  // namespace detail

/// Sums term(i) for i in [0, n) with the fixed-block pairwise scheme.
/// T must be value-initializable to zero (double, std::complex<double>).
template <typename T, typename TermFn>
T block_pairwise_sum(Index n, TermFn&& term) {
  if (n <= 0) return T{};
  const Index n_blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (n_blocks == 1) {
    T acc{};
    for (Index i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  std::vector<T> partials(static_cast<std::size_t>(n_blocks));
  for (Index b = 0; b < n_blocks; ++b) {
    const Index lo = b * kReductionBlock;
    const Index hi = std::min(lo + kReductionBlock, n);
    T acc{};
    for (Index i = lo; i < hi; ++i) acc += term(i);
    partials[static_cast<std::size_t>(b)] = acc;
  }
  return detail::combine_pairwise(partials.data(), n_blocks);
}

inline Complex block_pairwise_sum(const Complex* data, Index n) {
  return block_pairwise_sum<Complex>(n, [data](Index i) { return data[i]; });
}

inline double block_pairwise_sum(const double* data, Index n) {
  return block_pairwise_sum<double>(n, [data](Index i) { return data[i]; });
}

/// Accumulates one block-pairwise reduction incrementally: feed per-block
/// partials in block order, read the combined result at the end. Lets a
/// fused loop produce bit-identical sums to block_pairwise_sum.
template <typename T>
class BlockAccumulator {
 public:
  void push_block(T partial) { partials_.push_back(partial); }
  T total() const {
    if (partials_.empty()) return T{};
    return detail::combine_pairwise(partials_.data(),
                                    static_cast<Index>(partials_.size()));
  }
  void reset() { partials_.clear(); }

 private:
  std::vector<T> partials_;
};

}  // namespace spoamp
