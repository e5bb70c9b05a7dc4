#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swdft {

using ComplexSample = std::complex<double>;

/// Bytes per stored coefficient (double-precision complex).
inline constexpr std::uint64_t kBytesPerSample = sizeof(ComplexSample);

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{4} << 30;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Window extent is not a power of two, or the window spec is malformed.
class InvalidWindowError : public Error {
 public:
  using Error::Error;
};

class WindowTooLargeError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operation issued against an object in the wrong state (double
/// normalization, level cursor mismatch, push after close).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Malformed or non-finite input data.
class FormatError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t required_bytes, std::uint64_t budget_bytes);

  std::uint64_t required_bytes() const noexcept { return required_; }
  std::uint64_t budget_bytes() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// One tree operation: `shifted + twiddle * own`, one complex multiply and one
/// complex add. Every transform path that claims bitwise agreement routes its
/// arithmetic through here so the rounding sequence is identical.
inline ComplexSample butterfly(const ComplexSample& shifted, const ComplexSample& twiddle,
                               const ComplexSample& own) noexcept {
  const double re = twiddle.real() * own.real() - twiddle.imag() * own.imag();
  const double im = twiddle.real() * own.imag() + twiddle.imag() * own.real();
  return {shifted.real() + re, shifted.imag() + im};
}

enum class Normalization : std::uint8_t {
  none = 0,
  paper_1d = 1,  // 1/n, 1D windows only
  paper_2d = 2,  // 1/sqrt(prod n), 2D and up
  unitary = 3,   // 1/sqrt(prod n), any rank
};

std::string_view to_string(Normalization mode) noexcept;

/// Accepts "none", "paper-1d", "paper-2d", "unitary".
Normalization parse_normalization(std::string_view text);

/// Inverse of the container's u8 normalization byte.
Normalization normalization_from_code(std::uint8_t code);

}  // namespace swdft
