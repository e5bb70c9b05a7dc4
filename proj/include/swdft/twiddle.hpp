#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swdft/types.hpp"

namespace swdft {

/// Table of w_n^{-j} = exp(-2*pi*i*j/n), j = 0..n-1.
class TwiddleVector {
 public:
  /// Throws InvalidWindowError unless n is a power of two.
  explicit TwiddleVector(std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }
  const ComplexSample& operator[](std::size_t j) const noexcept { return entries_[j]; }
  std::span<const ComplexSample> entries() const noexcept { return entries_; }

 private:
  std::vector<ComplexSample> entries_;
};

inline TwiddleVector make_twiddles(std::size_t n) { return TwiddleVector(n); }

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
unsigned exact_log2(std::size_t n);

}  // namespace swdft
