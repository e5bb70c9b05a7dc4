#include "swdft/instrument.hpp"

#include <algorithm>

namespace swdft {

void OpCounter::track_positions(std::size_t position_count) {
  tracking_ = true;
  per_position_.assign(position_count, 0);
}

void OpCounter::reset() noexcept {
  total_ = 0;
  std::fill(per_position_.begin(), per_position_.end(), 0);
}

void MemoryTracker::acquire(std::uint64_t bytes) noexcept {
  current_ += bytes;
  peak_ = std::max(peak_, current_);
}

void MemoryTracker::release(std::uint64_t bytes) noexcept {
  current_ = bytes > current_ ? 0 : current_ - bytes;
}

}  // namespace swdft
