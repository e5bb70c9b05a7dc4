#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "swdft/coefficients.hpp"
#include "swdft/instrument.hpp"
#include "swdft/twiddle.hpp"

namespace swdft {

/// Sliding-window DFT of a 1D signal by the tree recurrence
///   T[p, l, i] = T[p - s_l, l-1, i mod 2^{l-1}] + W[i * s_l] * T[p, l-1, i mod 2^{l-1}],
/// s_l = 2^{m-l}. Levels outermost with two N x n level buffers; trees within
/// a level run data-parallel when `options.threads > 1`.
CoefficientArray tree_swdft_1d(const NdArray& x, const WindowSpec& spec,
                               const TransformOptions& options = {});

/// Sample-at-a-time form of the 1D tree transform. Keeps every level of the
/// most recent n trees in a ring; each push completes one new tree.
class TreeStream1D {
 public:
  explicit TreeStream1D(const WindowSpec& spec);

  /// Returns the new window's coefficients once n samples have arrived.
  /// Throws StateError after close().
  std::optional<std::vector<ComplexSample>> push(ComplexSample sample);

  void close() noexcept { closed_ = true; }
  bool closed() const noexcept { return closed_; }

  std::size_t samples_pushed() const noexcept { return pushed_; }
  const OpCounter& ops() const noexcept { return ops_; }
  const WindowSpec& window() const noexcept { return spec_; }

 private:
  ComplexSample* tree(std::size_t position) noexcept;

  WindowSpec spec_;
  std::size_t n_;
  unsigned m_;
  std::size_t slot_;  // nodes per tree across all levels: 2n - 1
  double scale_;
  TwiddleVector twiddles_;
  std::vector<ComplexSample> ring_;
  std::size_t pushed_ = 0;
  bool closed_ = false;
  OpCounter ops_;
};

}  // namespace swdft
