#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swdft/ndarray.hpp"
#include "swdft/window.hpp"

namespace swdft {

/// Sliding-window transform output: shape P_0 x ... x P_{k-1} x n_0 x ... x n_{k-1}.
/// Position index q_i corresponds to window position p_i = q_i + n_i - 1 (the
/// last sample covered by the window).
class CoefficientArray {
 public:
  CoefficientArray() = default;

  /// Zero-filled, unnormalized output for `source_dims` under `window`.
  CoefficientArray(std::vector<std::size_t> source_dims, WindowSpec window);

  /// Adopts an existing tensor (e.g. read from a container). The tensor must
  /// have rank 2k with extents P..., n....
  CoefficientArray(NdArray values, Normalization applied);

  std::size_t rank() const noexcept { return window_.rank(); }
  const WindowSpec& window() const noexcept { return window_; }
  const std::vector<std::size_t>& source_dims() const noexcept { return source_dims_; }
  const std::vector<std::size_t>& positions() const noexcept { return positions_; }
  std::size_t position_count() const noexcept { return position_count_; }
  std::size_t window_volume() const noexcept { return window_.volume(); }

  /// Normalization already applied to the stored values.
  Normalization normalization() const noexcept { return applied_; }

  NdArray& values() noexcept { return values_; }
  const NdArray& values() const noexcept { return values_; }

  /// Coefficients of one window position (flat row-major position index).
  std::span<ComplexSample> window_at(std::size_t flat_position);
  std::span<const ComplexSample> window_at(std::size_t flat_position) const;

  /// Bounds-checked access by position offset q and frequency k.
  const ComplexSample& at(std::span<const std::size_t> position,
                          std::span<const std::size_t> frequency) const;

  friend bool operator==(const CoefficientArray& a, const CoefficientArray& b) {
    return a.applied_ == b.applied_ && a.values_ == b.values_;
  }

 private:
  friend CoefficientArray normalize(CoefficientArray coeffs, Normalization mode);

  std::vector<std::size_t> source_dims_;
  std::vector<std::size_t> positions_;
  std::size_t position_count_ = 0;
  WindowSpec window_{std::vector<unsigned>{0}};
  Normalization applied_ = Normalization::none;
  NdArray values_;
};

/// Scales unnormalized coefficients. Throws StateError if `coeffs` already
/// carries a normalization and `mode` is not none.
CoefficientArray normalize(CoefficientArray coeffs, Normalization mode);

/// Byte accounting used for the pre-allocation budget check.
struct MemoryEstimate {
  std::uint64_t output_elements = 0;
  std::uint64_t level_buffer_elements = 0;

  std::uint64_t output_bytes() const noexcept { return output_elements * kBytesPerSample; }
  std::uint64_t level_buffer_bytes() const noexcept {
    return level_buffer_elements * kBytesPerSample;
  }
  std::uint64_t total_bytes() const noexcept { return output_bytes() + level_buffer_bytes(); }
};

/// Output tensor size only (oracles, per-window FFT).
MemoryEstimate estimate_output_memory(std::span<const std::size_t> dims, const WindowSpec& spec);

/// Output plus the two level buffers of N_0...N_{k-1} * n_0...n_{k-1} elements.
MemoryEstimate estimate_tree_memory(std::span<const std::size_t> dims, const WindowSpec& spec);

/// Throws BudgetExceededError when `required` exceeds `budget`.
void check_budget(std::uint64_t required_bytes, std::uint64_t budget_bytes);

/// Saturating multiply used by the estimators.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace swdft
