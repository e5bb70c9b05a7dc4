#include "swdft/coefficients.hpp"

#include <limits>
#include <stdexcept>

namespace swdft {
namespace {

std::vector<std::size_t> coefficient_dims(const std::vector<std::size_t>& positions,
                                          const WindowSpec& window) {
  std::vector<std::size_t> dims = positions;
  for (std::size_t d = 0; d < window.rank(); ++d) dims.push_back(window.size(d));
  return dims;
}

}  // namespace

CoefficientArray::CoefficientArray(std::vector<std::size_t> source_dims, WindowSpec window)
    : source_dims_(std::move(source_dims)),
      positions_(window_positions(source_dims_, window)),
      position_count_(element_count(positions_)),
      window_(std::move(window)),
      values_(coefficient_dims(positions_, window_)) {}

CoefficientArray::CoefficientArray(NdArray values, Normalization applied) : applied_(applied) {
  const std::size_t rank2 = values.rank();
  if (rank2 == 0 || rank2 % 2 != 0) {
    throw ShapeError("coefficient tensor must have even rank 2k");
  }
  const std::size_t k = rank2 / 2;
  std::vector<std::size_t> sizes(values.dims().begin() + static_cast<std::ptrdiff_t>(k),
                                 values.dims().end());
  window_ = WindowSpec::from_sizes(sizes, applied);
  positions_.assign(values.dims().begin(), values.dims().begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t d = 0; d < k; ++d) {
    if (positions_[d] == 0) throw ShapeError("coefficient tensor has no window positions");
    source_dims_.push_back(positions_[d] + sizes[d] - 1);
  }
  position_count_ = element_count(positions_);
  values_ = std::move(values);
}

std::span<ComplexSample> CoefficientArray::window_at(std::size_t flat_position) {
  const std::size_t volume = window_volume();
  return values_.data().subspan(flat_position * volume, volume);
}

std::span<const ComplexSample> CoefficientArray::window_at(std::size_t flat_position) const {
  const std::size_t volume = window_volume();
  return values_.data().subspan(flat_position * volume, volume);
}

const ComplexSample& CoefficientArray::at(std::span<const std::size_t> position,
                                          std::span<const std::size_t> frequency) const {
  std::vector<std::size_t> index(position.begin(), position.end());
  index.insert(index.end(), frequency.begin(), frequency.end());
  return values_.at(index);
}

CoefficientArray normalize(CoefficientArray coeffs, Normalization mode) {
  if (mode == Normalization::none) return coeffs;
  if (coeffs.applied_ != Normalization::none) {
    throw StateError("coefficients are already normalized (" +
                     std::string(to_string(coeffs.applied_)) + ")");
  }
  const double scale = normalization_scale(mode, coeffs.window_);
  for (ComplexSample& v : coeffs.values_.data()) v *= scale;
  coeffs.applied_ = mode;
  coeffs.window_ = coeffs.window_.with_normalization(mode);
  return coeffs;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

MemoryEstimate estimate_output_memory(std::span<const std::size_t> dims, const WindowSpec& spec) {
  const auto positions = window_positions(dims, spec);
  MemoryEstimate est;
  est.output_elements = spec.volume();
  for (std::size_t p : positions) est.output_elements = saturating_mul(est.output_elements, p);
  return est;
}

MemoryEstimate estimate_tree_memory(std::span<const std::size_t> dims, const WindowSpec& spec) {
  MemoryEstimate est = estimate_output_memory(dims, spec);
  est.level_buffer_elements = saturating_mul(2, spec.volume());
  for (std::size_t n : dims) {
    est.level_buffer_elements = saturating_mul(est.level_buffer_elements, n);
  }
  return est;
}

void check_budget(std::uint64_t required_bytes, std::uint64_t budget_bytes) {
  if (required_bytes > budget_bytes) throw BudgetExceededError(required_bytes, budget_bytes);
}

}  // namespace swdft
