#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "swdft/coefficients.hpp"
#include "swdft/ndarray.hpp"

namespace swdft {

// SWDF binary container, little-endian:
//   "SWDF" | u32 version=1 | u32 ndim | ndim x u64 extents | u8 dtype | u8 norm | payload
// dtype 0 = real float64, 1 = complex float64 interleaved (re, im).

enum class SampleType : std::uint8_t { real64 = 0, complex64 = 1 };

inline constexpr std::uint32_t kContainerVersion = 1;

struct ContainerContents {
  NdArray array;
  Normalization normalization = Normalization::none;
  SampleType stored_as = SampleType::complex64;
};

/// Throws FormatError on bad magic, version, dtype, truncation, or non-finite
/// samples. Real payloads are promoted to complex.
ContainerContents read_container(std::istream& in);
ContainerContents read_container(const std::filesystem::path& path);

void write_container(std::ostream& out, const NdArray& array,
                     Normalization normalization = Normalization::none,
                     SampleType type = SampleType::complex64);
void write_container(const std::filesystem::path& path, const NdArray& array,
                     Normalization normalization = Normalization::none,
                     SampleType type = SampleType::complex64);

void write_coefficients(const std::filesystem::path& path, const CoefficientArray& coeffs);
CoefficientArray read_coefficients(const std::filesystem::path& path);

/// Comma-separated real values, one array row per line. Rows must have equal
/// length. Throws FormatError otherwise.
NdArray read_csv_2d(std::istream& in);
NdArray read_csv_2d(const std::filesystem::path& path);

/// Reads a container, or a CSV file when the file does not start with the
/// container magic.
NdArray read_array(const std::filesystem::path& path);

}  // namespace swdft
