#pragma once

#include <cstddef>
#include <memory>
#include <utility>

#include "swdft/types.hpp"

namespace swdft {

/// Uninitialized complex storage for tree levels. Only nodes of valid trees
/// are ever written or read, so untouched pages of a large level buffer are
/// never faulted in.
class LevelBuffer {
 public:
  LevelBuffer() = default;
  explicit LevelBuffer(std::size_t size)
      : data_(size ? std::allocator<ComplexSample>().allocate(size) : nullptr), size_(size) {}
  ~LevelBuffer() { reset(); }

  LevelBuffer(LevelBuffer&& other) noexcept
      : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0)) {}
  LevelBuffer& operator=(LevelBuffer&& other) noexcept {
    swap(other);
    return *this;
  }
  LevelBuffer(const LevelBuffer&) = delete;
  LevelBuffer& operator=(const LevelBuffer&) = delete;

  void swap(LevelBuffer& other) noexcept {
    std::swap(data_, other.data_);
    std::swap(size_, other.size_);
  }
  friend void swap(LevelBuffer& a, LevelBuffer& b) noexcept { a.swap(b); }

  ComplexSample* data() noexcept { return data_; }
  const ComplexSample* data() const noexcept { return data_; }
  std::size_t size() const noexcept { return size_; }
  ComplexSample* begin() noexcept { return data_; }
  ComplexSample* end() noexcept { return data_ + size_; }
  const ComplexSample* begin() const noexcept { return data_; }
  const ComplexSample* end() const noexcept { return data_ + size_; }
  ComplexSample& operator[](std::size_t i) noexcept { return data_[i]; }
  const ComplexSample& operator[](std::size_t i) const noexcept { return data_[i]; }

 private:
  void reset() noexcept {
    if (data_) std::allocator<ComplexSample>().deallocate(data_, size_);
    data_ = nullptr;
    size_ = 0;
  }

  ComplexSample* data_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace swdft
