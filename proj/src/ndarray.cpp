#include "swdft/ndarray.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace swdft {

std::size_t element_count(std::span<const std::size_t> dims) {
  std::size_t count = 1;
  for (std::size_t d : dims) {
    if (d != 0 && count > std::numeric_limits<std::size_t>::max() / d) {
      throw ShapeError("array element count overflows");
    }
    count *= d;
  }
  return count;
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t stride = 1;
  for (std::size_t d = dims.size(); d-- > 0;) {
    strides[d] = stride;
    stride *= dims[d];
  }
  return strides;
}

bool next_index(std::span<std::size_t> index, std::span<const std::size_t> lower,
                std::span<const std::size_t> upper) noexcept {
  for (std::size_t d = index.size(); d-- > 0;) {
    if (++index[d] < upper[d]) return true;
    index[d] = lower[d];
  }
  return false;
}

NdArray::NdArray(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), strides_(row_major_strides(dims_)), data_(element_count(dims_)) {}

NdArray::NdArray(std::vector<std::size_t> dims, std::vector<ComplexSample> data)
    : dims_(std::move(dims)), strides_(row_major_strides(dims_)), data_(std::move(data)) {
  if (data_.size() != element_count(dims_)) {
    throw ShapeError("data length " + std::to_string(data_.size()) + " does not match extents");
  }
}

std::size_t NdArray::offset(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw std::out_of_range("index rank mismatch");
  std::size_t off = 0;
  for (std::size_t d = 0; d < index.size(); ++d) {
    if (index[d] >= dims_[d]) throw std::out_of_range("index out of bounds");
    off += index[d] * strides_[d];
  }
  return off;
}

std::vector<std::size_t> NdArray::index_of(std::size_t offset) const {
  if (offset >= data_.size()) throw std::out_of_range("offset out of bounds");
  std::vector<std::size_t> index(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    index[d] = offset / strides_[d];
    offset %= strides_[d];
  }
  return index;
}

}  // namespace swdft
