#include "swdft/schedule.hpp"

#include <stdexcept>
#include <string>

namespace swdft {

std::size_t owning_dimension(std::size_t level, const WindowSpec& spec) {
  if (level == 0 || level > spec.total_levels()) {
    throw std::logic_error("level " + std::to_string(level) + " has no owning dimension");
  }
  // Dimension c owns levels (inner(c), inner(c) + m_c].
  for (std::size_t c = spec.rank(); c-- > 0;) {
    const std::size_t inner = spec.inner_levels(c);
    if (level > inner && level <= inner + spec.exponent(c)) return c;
  }
  throw std::logic_error("unreachable: level not owned");
}

std::size_t shift(std::size_t level, std::size_t dim, const WindowSpec& spec) {
  if (dim >= spec.rank()) throw std::logic_error("dimension out of range");
  const std::size_t inner = spec.inner_levels(dim);
  const std::size_t upper = inner + spec.exponent(dim);
  if (level <= inner || level > upper) {
    throw std::logic_error("level " + std::to_string(level) + " is not owned by dimension " +
                           std::to_string(dim));
  }
  return std::size_t{1} << (upper - level);
}

LevelGeometry level_geometry(std::size_t level, const WindowSpec& spec) {
  if (level > spec.total_levels()) {
    throw std::logic_error("level " + std::to_string(level) + " is past the final level");
  }
  const std::size_t k = spec.rank();
  LevelGeometry g;
  g.level = level;
  g.extents.assign(k, 1);
  g.thresholds.assign(k, 0);
  if (level == 0) {
    g.dim = k;
    return g;
  }

  const std::size_t c = owning_dimension(level, spec);
  g.dim = c;
  g.shift = shift(level, c, spec);
  g.inner_bits = spec.inner_levels(c);
  for (std::size_t i = c + 1; i < k; ++i) {
    g.extents[i] = spec.size(i);
    g.thresholds[i] = spec.size(i) - 1;
  }
  g.extents[c] = std::size_t{1} << (level - g.inner_bits);
  g.thresholds[c] = spec.size(c) - g.shift;
  return g;
}

}  // namespace swdft
