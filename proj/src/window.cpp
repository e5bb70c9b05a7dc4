#include "swdft/window.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "swdft/twiddle.hpp"

namespace swdft {
namespace {

void check_normalization_rank(Normalization mode, std::size_t rank) {
  if (mode == Normalization::paper_1d && rank != 1) {
    throw InvalidWindowError("paper-1d normalization applies to 1D windows only");
  }
  if (mode == Normalization::paper_2d && rank < 2) {
    throw InvalidWindowError("paper-2d normalization applies to windows of rank 2 or more");
  }
}

}  // namespace

WindowSpec::WindowSpec(std::vector<unsigned> exponents, Normalization normalization)
    : exponents_(std::move(exponents)), normalization_(normalization) {
  if (exponents_.empty()) throw InvalidWindowError("window spec needs at least one dimension");
  std::size_t total = 0;
  for (unsigned m : exponents_) {
    if (m > kMaxExponent) {
      throw InvalidWindowError("window exponent " + std::to_string(m) + " is too large");
    }
    total += m;
  }
  if (total > 48) throw InvalidWindowError("window volume exceeds 2^48 nodes");
  check_normalization_rank(normalization_, exponents_.size());
}

WindowSpec WindowSpec::from_sizes(std::span<const std::size_t> sizes, Normalization normalization) {
  std::vector<unsigned> exponents;
  exponents.reserve(sizes.size());
  for (std::size_t n : sizes) {
    if (!is_power_of_two(n)) {
      throw InvalidWindowError("window extent " + std::to_string(n) + " is not a power of two");
    }
    exponents.push_back(exact_log2(n));
  }
  return WindowSpec(std::move(exponents), normalization);
}

WindowSpec WindowSpec::parse(std::string_view text, Normalization normalization) {
  const auto sizes = parse_extents(text);
  return from_sizes(sizes, normalization);
}

std::vector<std::size_t> WindowSpec::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(exponents_.size());
  for (unsigned m : exponents_) out.push_back(std::size_t{1} << m);
  return out;
}

std::size_t WindowSpec::total_levels() const noexcept {
  return std::accumulate(exponents_.begin(), exponents_.end(), std::size_t{0});
}

std::size_t WindowSpec::inner_levels(std::size_t dim) const {
  if (dim >= rank()) throw std::out_of_range("dimension out of range");
  std::size_t total = 0;
  for (std::size_t i = dim + 1; i < rank(); ++i) total += exponents_[i];
  return total;
}

WindowSpec WindowSpec::with_normalization(Normalization mode) const {
  return WindowSpec(exponents_, mode);
}

void WindowSpec::check_fits(std::span<const std::size_t> dims) const {
  if (dims.size() != rank()) {
    throw ShapeError("array rank " + std::to_string(dims.size()) + " does not match window rank " +
                     std::to_string(rank()));
  }
  for (std::size_t d = 0; d < rank(); ++d) {
    if (size(d) > dims[d]) {
      throw WindowTooLargeError("window extent " + std::to_string(size(d)) + " exceeds array extent " +
                                std::to_string(dims[d]) + " in dimension " + std::to_string(d));
    }
  }
}

std::string WindowSpec::to_string() const {
  std::string out;
  for (std::size_t d = 0; d < rank(); ++d) {
    if (d) out += 'x';
    out += std::to_string(size(d));
  }
  return out;
}

std::vector<std::size_t> window_positions(std::span<const std::size_t> dims, const WindowSpec& spec) {
  spec.check_fits(dims);
  std::vector<std::size_t> out(dims.size());
  for (std::size_t d = 0; d < dims.size(); ++d) out[d] = dims[d] - spec.size(d) + 1;
  return out;
}

double normalization_scale(Normalization mode, const WindowSpec& spec) {
  check_normalization_rank(mode, spec.rank());
  const double volume = static_cast<double>(spec.volume());
  switch (mode) {
    case Normalization::none:
      return 1.0;
    case Normalization::paper_1d:
      return 1.0 / volume;
    case Normalization::paper_2d:
    case Normalization::unitary:
      return 1.0 / std::sqrt(volume);
  }
  return 1.0;
}

std::vector<std::size_t> parse_extents(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find_first_of("xX", start);
    const std::string_view token = text.substr(start, end == std::string_view::npos ? end : end - start);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
      throw InvalidWindowError("malformed extent list '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace swdft
