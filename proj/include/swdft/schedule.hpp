#pragma once

#include <cstddef>
#include <vector>

#include "swdft/window.hpp"

namespace swdft {

/// Dimension whose FFT a level belongs to. The last dimension owns levels
/// 1..m_{k-1}, dimension 0 owns the final m_0 levels. Throws std::logic_error
/// for level 0 or a level past the last.
std::size_t owning_dimension(std::size_t level, const WindowSpec& spec);

/// Distance to the tree holding the reused operand:
/// s_l^c = 2^{(m_c + ... + m_{k-1}) - l}. Throws std::logic_error when `dim`
/// does not own `level`.
std::size_t shift(std::size_t level, std::size_t dim, const WindowSpec& spec);

/// Shape of one level of every tree, and where in the position lattice that
/// level exists.
struct LevelGeometry {
  std::size_t level = 0;
  /// Owning dimension; equals rank() for level 0 (the data).
  std::size_t dim = 0;
  std::size_t shift = 0;
  /// Node extents per dimension; their product is 2^level.
  std::vector<std::size_t> extents;
  /// Smallest valid window position per dimension. A node at this level is
  /// computable from in-range data iff every p_i >= thresholds[i].
  std::vector<std::size_t> thresholds;
  /// log2 of the product of extents of dimensions after `dim`; the owning
  /// dimension's node index is the flat node index shifted right by this.
  std::size_t inner_bits = 0;

  std::size_t node_count() const noexcept { return std::size_t{1} << level; }
};

LevelGeometry level_geometry(std::size_t level, const WindowSpec& spec);

}  // namespace swdft
