#include "swdft/container.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace swdft {
namespace {

constexpr std::array<char, 4> kMagic{'S', 'W', 'D', 'F'};

template <typename T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return value;
  }
}

template <typename T>
void put(std::ostream& out, T value) {
  value = to_little_endian(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw FormatError(std::string("truncated container while reading ") + what);
  }
  return to_little_endian(value);
}

double finite_or_throw(double v) {
  if (!std::isfinite(v)) throw FormatError("non-finite sample in input");
  return v;
}

}  // namespace

ContainerContents read_container(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError("missing SWDF magic");
  }
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kContainerVersion) {
    throw FormatError("unsupported container version " + std::to_string(version));
  }
  const auto ndim = get<std::uint32_t>(in, "ndim");
  if (ndim == 0 || ndim > 64) throw FormatError("invalid ndim " + std::to_string(ndim));
  std::vector<std::size_t> dims(ndim);
  for (auto& d : dims) {
    const auto extent = get<std::uint64_t>(in, "extents");
    if (extent == 0) throw FormatError("zero extent in container");
    d = static_cast<std::size_t>(extent);
  }
  const auto dtype = get<std::uint8_t>(in, "dtype");
  if (dtype > 1) throw FormatError("unknown dtype " + std::to_string(dtype));
  const auto norm = normalization_from_code(get<std::uint8_t>(in, "normalization"));

  ContainerContents contents;
  contents.normalization = norm;
  contents.stored_as = static_cast<SampleType>(dtype);
  std::vector<ComplexSample> data(element_count(dims));
  for (auto& v : data) {
    const double re = finite_or_throw(get<double>(in, "payload"));
    const double im = dtype == 1 ? finite_or_throw(get<double>(in, "payload")) : 0.0;
    v = {re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after container payload");
  }
  contents.array = NdArray(std::move(dims), std::move(data));
  return contents;
}

ContainerContents read_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_container(in);
}

void write_container(std::ostream& out, const NdArray& array, Normalization normalization,
                     SampleType type) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kContainerVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(array.rank()));
  for (std::size_t d : array.dims()) put<std::uint64_t>(out, d);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(type));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(normalization));
  for (const ComplexSample& v : array.data()) {
    put<double>(out, v.real());
    if (type == SampleType::complex64) put<double>(out, v.imag());
  }
  if (!out) throw FormatError("write failed");
}

void write_container(const std::filesystem::path& path, const NdArray& array,
                     Normalization normalization, SampleType type) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_container(out, array, normalization, type);
}

void write_coefficients(const std::filesystem::path& path, const CoefficientArray& coeffs) {
  write_container(path, coeffs.values(), coeffs.normalization());
}

CoefficientArray read_coefficients(const std::filesystem::path& path) {
  auto contents = read_container(path);
  return CoefficientArray(std::move(contents.array), contents.normalization);
}

NdArray read_csv_2d(std::istream& in) {
  std::vector<ComplexSample> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw FormatError("bad CSV value '" + cell + "' on row " + std::to_string(rows + 1));
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw FormatError("bad CSV value '" + cell + "' on row " + std::to_string(rows + 1));
      }
      data.emplace_back(finite_or_throw(v), 0.0);
      ++count;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw FormatError("ragged CSV: row " + std::to_string(rows + 1) + " has " +
                        std::to_string(count) + " values, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0 || cols == 0) throw FormatError("empty CSV input");
  return NdArray({rows, cols}, std::move(data));
}

NdArray read_csv_2d(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_csv_2d(in);
}

NdArray read_array(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  const bool is_container = in.gcount() == 4 && magic == kMagic;
  in.clear();
  in.seekg(0);
  if (is_container) return read_container(in).array;
  return read_csv_2d(in);
}

}  // namespace swdft
