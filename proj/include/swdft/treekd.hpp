#pragma once

#include <cstddef>
#include <vector>

#include "swdft/coefficients.hpp"
#include "swdft/instrument.hpp"
#include "swdft/schedule.hpp"
#include "swdft/level_buffer.hpp"
#include "swdft/twiddle.hpp"

namespace swdft {

struct LevelPlanEntry {
  LevelGeometry geometry;
  /// Exponent e of the reduced owning-dimension index i_c mod 2^e read from
  /// level l - 1: l - 1 - (m_{c+1} + ... + m_{k-1}). Never negative.
  std::size_t modulus_exponent = 0;
};

/// Levels 1..sum(m) in processing order: the last dimension's m_{k-1} levels
/// first, dimension 0's levels last.
struct LevelPlan {
  WindowSpec window;
  std::vector<LevelPlanEntry> levels;
};

LevelPlan build_level_plan(const WindowSpec& spec);

/// Double-buffered tree storage for any rank, driven by a LevelPlan.
class TreeLatticeKD {
 public:
  TreeLatticeKD(const NdArray& x, const WindowSpec& spec, const TransformOptions& options = {});
  ~TreeLatticeKD();

  TreeLatticeKD(const TreeLatticeKD&) = delete;
  TreeLatticeKD& operator=(const TreeLatticeKD&) = delete;

  const LevelPlan& plan() const noexcept { return plan_; }
  std::size_t level() const noexcept { return level_; }
  std::size_t final_level() const noexcept { return plan_.levels.size(); }

  /// Computes `entry`'s level from the previous one. Throws StateError unless
  /// the lattice currently holds level entry.geometry.level - 1.
  void kd_level_step(const LevelPlanEntry& entry);
  void run();

  /// Unnormalized output; requires the final level.
  CoefficientArray extract() const;

  /// Current-level node storage of one tree (flat position), 2^level nodes.
  std::span<const ComplexSample> tree(std::size_t flat_position) const;

  std::size_t buffer_elements() const noexcept { return prev_.size() + cur_.size(); }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  WindowSpec spec_;
  TransformOptions options_;
  LevelPlan plan_;
  std::vector<TwiddleVector> twiddles_;
  std::size_t trees_, volume_;
  LevelBuffer prev_, cur_;
  std::size_t level_ = 0;
  std::uint64_t tracked_bytes_ = 0;
};

/// Sliding-window DFT for arrays of any rank.
CoefficientArray tree_swdft_kd(const NdArray& x, const WindowSpec& spec,
                               const TransformOptions& options = {});

}  // namespace swdft
