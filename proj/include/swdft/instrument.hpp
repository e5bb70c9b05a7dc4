#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swdft/types.hpp"

namespace swdft {

/// Tally of tree operations (one complex multiply plus one complex add per
/// computed node). Optionally keeps a per-window-position breakdown.
class OpCounter {
 public:
  void add(std::uint64_t ops) noexcept { total_ += ops; }
  std::uint64_t total() const noexcept { return total_; }

  /// Enables the per-position tally over a lattice with `position_count`
  /// flat positions. Resets any previous breakdown.
  void track_positions(std::size_t position_count);
  bool tracking_positions() const noexcept { return tracking_; }

  void add_at(std::size_t flat_position, std::uint64_t ops) {
    total_ += ops;
    if (tracking_) per_position_[flat_position] += ops;
  }
  /// Per-position tally. Empty unless tracking is enabled.
  const std::vector<std::uint64_t>& per_position() const noexcept { return per_position_; }

  void reset() noexcept;

 private:
  std::uint64_t total_ = 0;
  bool tracking_ = false;
  std::vector<std::uint64_t> per_position_;
};

/// Tracks bytes held by transform working storage.
class MemoryTracker {
 public:
  void acquire(std::uint64_t bytes) noexcept;
  void release(std::uint64_t bytes) noexcept;

  std::uint64_t current_bytes() const noexcept { return current_; }
  std::uint64_t peak_bytes() const noexcept { return peak_; }
  /// Elements in the most recent tree level-buffer allocation (both buffers).
  std::uint64_t level_buffer_elements() const noexcept { return level_buffer_elements_; }
  void record_level_buffers(std::uint64_t elements) noexcept { level_buffer_elements_ = elements; }

 private:
  std::uint64_t current_ = 0;
  std::uint64_t peak_ = 0;
  std::uint64_t level_buffer_elements_ = 0;
};

enum class LoopOrder {
  levels_outer,  // double-buffered, data-parallel within a level
  trees_outer,   // each tree completed before the next, all levels retained
};

struct TransformOptions {
  /// Worker threads for the intra-level data-parallel loops. 1 runs the
  /// serial path.
  int threads = 1;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  LoopOrder loop_order = LoopOrder::levels_outer;
  OpCounter* ops = nullptr;
  MemoryTracker* memory = nullptr;
};

}  // namespace swdft
