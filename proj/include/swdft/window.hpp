#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swdft/types.hpp"

namespace swdft {

/// Per-dimension radix-2 window exponents plus the requested output
/// normalization. Dimension 0 is the slowest-varying (row) axis.
class WindowSpec {
 public:
  /// Largest accepted exponent; keeps 2^m and node indices well inside 64 bits.
  static constexpr unsigned kMaxExponent = 30;

  explicit WindowSpec(std::vector<unsigned> exponents,
                      Normalization normalization = Normalization::none);

  /// Builds a spec from window extents; throws InvalidWindowError unless every
  /// extent is a power of two.
  static WindowSpec from_sizes(std::span<const std::size_t> sizes,
                               Normalization normalization = Normalization::none);

  /// Parses "8x8", "4x2x2", "16".
  static WindowSpec parse(std::string_view text,
                          Normalization normalization = Normalization::none);

  std::size_t rank() const noexcept { return exponents_.size(); }
  unsigned exponent(std::size_t dim) const { return exponents_.at(dim); }
  std::size_t size(std::size_t dim) const { return std::size_t{1} << exponents_.at(dim); }
  const std::vector<unsigned>& exponents() const noexcept { return exponents_; }
  std::vector<std::size_t> sizes() const;

  /// Sum of exponents: the number of tree levels below the data level.
  std::size_t total_levels() const noexcept;
  /// Product of window extents (nodes in a complete final level).
  std::size_t volume() const noexcept { return std::size_t{1} << total_levels(); }

  /// Sum of exponents of dimensions strictly after `dim`.
  std::size_t inner_levels(std::size_t dim) const;

  Normalization normalization() const noexcept { return normalization_; }
  WindowSpec with_normalization(Normalization mode) const;

  /// Throws ShapeError on rank mismatch and WindowTooLargeError if any
  /// window extent exceeds the matching array extent.
  void check_fits(std::span<const std::size_t> dims) const;

  std::string to_string() const;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;

 private:
  std::vector<unsigned> exponents_;
  Normalization normalization_;
};

/// Output positions per dimension, P_i = N_i - n_i + 1.
std::vector<std::size_t> window_positions(std::span<const std::size_t> dims, const WindowSpec& spec);

/// Scale applied by a normalization mode for the given spec. Throws
/// InvalidWindowError when the mode does not apply to the spec's rank.
double normalization_scale(Normalization mode, const WindowSpec& spec);

/// Parses "431x431"-style extent lists.
std::vector<std::size_t> parse_extents(std::string_view text);

}  // namespace swdft
