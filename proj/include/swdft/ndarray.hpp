#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "swdft/types.hpp"

namespace swdft {

/// Row-major, contiguous, owning k-dimensional array of complex samples.
class NdArray {
 public:
  NdArray() = default;
  explicit NdArray(std::vector<std::size_t> dims);
  NdArray(std::vector<std::size_t> dims, std::vector<ComplexSample> data);

  std::size_t rank() const noexcept { return dims_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t extent(std::size_t d) const { return dims_.at(d); }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<ComplexSample> data() noexcept { return data_; }
  std::span<const ComplexSample> data() const noexcept { return data_; }

  ComplexSample& operator[](std::size_t offset) noexcept { return data_[offset]; }
  const ComplexSample& operator[](std::size_t offset) const noexcept { return data_[offset]; }

  /// Bounds-checked multi-index access.
  ComplexSample& at(std::span<const std::size_t> index) { return data_[offset(index)]; }
  const ComplexSample& at(std::span<const std::size_t> index) const { return data_[offset(index)]; }
  ComplexSample& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  const ComplexSample& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  /// Throws std::out_of_range on a bad index.
  std::size_t offset(std::span<const std::size_t> index) const;
  std::vector<std::size_t> index_of(std::size_t offset) const;

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<ComplexSample> data_;
};

/// Product of extents; throws ShapeError on size_t overflow.
std::size_t element_count(std::span<const std::size_t> dims);

/// Row-major strides for the given extents.
std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims);

/// Advances a row-major multi-index within [lower, upper). Returns false once
/// the index wraps past the last element.
bool next_index(std::span<std::size_t> index, std::span<const std::size_t> lower,
                std::span<const std::size_t> upper) noexcept;

}  // namespace swdft
