#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swdft/coefficients.hpp"
#include "swdft/instrument.hpp"
#include "swdft/level_buffer.hpp"
#include "swdft/twiddle.hpp"

namespace swdft {

/// Tree storage for the 2D transform, double-buffered across levels: two
/// N0 x N1 x (n0 n1) buffers holding the previous and current level of every
/// tree. Levels 1..m1 run length-n1 FFT stages along dimension 1 (row
/// levels), levels m1+1..m1+m0 run stages along dimension 0 (column levels).
///
/// Node (i0, i1) of a level with extents (e0, e1) lives at offset i0*e1 + i1
/// inside its tree's slot.
class TreeLattice2D {
 public:
  TreeLattice2D(const NdArray& x, const WindowSpec& spec, const TransformOptions& options = {});
  ~TreeLattice2D();

  TreeLattice2D(const TreeLattice2D&) = delete;
  TreeLattice2D& operator=(const TreeLattice2D&) = delete;

  /// Level held by the current buffer (0 = the data).
  std::size_t level() const noexcept { return level_; }
  std::size_t final_level() const noexcept { return m0_ + m1_; }

  /// Computes row level t from level t-1. Throws StateError unless the
  /// lattice holds level t-1 and t <= m1.
  void row_level_step(std::size_t t);
  /// Computes column level v (> m1) from level v-1.
  void col_level_step(std::size_t v);
  /// Advances one level, dispatching to the row or column step.
  void step();
  void run();

  /// True when node storage at (p0, p1) is defined for the current level.
  bool is_valid(std::size_t p0, std::size_t p1) const noexcept;

  /// Checked node read at the current level. Reading a node whose tree is
  /// below the level's validity threshold throws std::logic_error.
  const ComplexSample& node(std::size_t p0, std::size_t p1, std::size_t i0, std::size_t i1) const;

  /// Unnormalized output; requires level() == final_level().
  CoefficientArray extract() const;

  /// Elements held by both level buffers.
  std::size_t buffer_elements() const noexcept { return prev_.size() + cur_.size(); }

 private:
  void add_ops(std::size_t first0, std::size_t first1, std::size_t nodes);

  std::vector<std::size_t> dims_;
  WindowSpec spec_;
  TransformOptions options_;
  std::size_t N0_, N1_, m0_, m1_, n0_, n1_, volume_;
  TwiddleVector tw0_, tw1_;
  LevelBuffer prev_, cur_;  // cur_ holds level_ after a step
  std::size_t level_ = 0;
  std::uint64_t tracked_bytes_ = 0;
};

/// Sliding-window 2D DFT by the row-column tree recurrence. Output matches
/// the per-window row-column FFT bit for bit.
CoefficientArray tree_swdft_2d(const NdArray& x, const WindowSpec& spec,
                               const TransformOptions& options = {});

/// Row-at-a-time form: trees are completed in raster order as each new row
/// of N1 samples arrives. Keeps all levels of the trees in the most recent n0
/// rows.
class TreeStream2D {
 public:
  TreeStream2D(std::size_t columns, const WindowSpec& spec);

  /// Returns the P1 x n0 x n1 slab for the new row of window positions once
  /// n0 rows have arrived. Throws ShapeError if row.size() != columns, and
  /// StateError after close().
  std::optional<NdArray> push_row(std::span<const ComplexSample> row);

  void close() noexcept { closed_ = true; }
  bool closed() const noexcept { return closed_; }

  std::size_t rows_pushed() const noexcept { return rows_; }
  std::size_t columns() const noexcept { return N1_; }
  const OpCounter& ops() const noexcept { return ops_; }
  /// Operations spent on each tree of the most recent row.
  const std::vector<std::uint64_t>& last_row_ops() const noexcept { return last_row_ops_; }

  /// Elements held by the rolling band.
  std::size_t band_elements() const noexcept { return band_.size(); }

 private:
  WindowSpec spec_;
  std::size_t N1_, m0_, m1_, n0_, n1_, slot_;
  double scale_;
  TwiddleVector tw0_, tw1_;
  std::vector<ComplexSample> band_;
  std::vector<std::uint64_t> last_row_ops_;
  std::size_t rows_ = 0;
  bool closed_ = false;
  OpCounter ops_;
};

}  // namespace swdft
