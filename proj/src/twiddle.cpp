#include "swdft/twiddle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace swdft {

unsigned exact_log2(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw InvalidWindowError("size " + std::to_string(n) + " is not a power of two");
  }
  unsigned m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  return m;
}

TwiddleVector::TwiddleVector(std::size_t n) {
  exact_log2(n);
  entries_.resize(n);
  entries_[0] = {1.0, 0.0};
  if (n == 1) return;
  if (n == 2) {
    entries_[1] = {-1.0, 0.0};
    return;
  }

  // Evaluate cos/sin on the first octant only and fold by symmetry, so that
  // quarter turns are exact and entries[n - j] is the exact conjugate of
  // entries[j].
  const std::size_t quarter = n / 4;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<double> cosines(quarter);
  std::vector<double> sines(quarter);
  for (std::size_t r = 0; r < quarter; ++r) {
    if (2 * r <= quarter) {
      cosines[r] = std::cos(step * static_cast<double>(r));
      sines[r] = std::sin(step * static_cast<double>(r));
    } else {
      cosines[r] = std::sin(step * static_cast<double>(quarter - r));
      sines[r] = std::cos(step * static_cast<double>(quarter - r));
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = j % quarter;
    double c = 0.0;
    double s = 0.0;
    switch (j / quarter) {
      case 0:
        c = cosines[r];
        s = sines[r];
        break;
      case 1:
        c = 0.0 - sines[r];
        s = cosines[r];
        break;
      case 2:
        c = 0.0 - cosines[r];
        s = 0.0 - sines[r];
        break;
      default:
        c = sines[r];
        s = 0.0 - cosines[r];
        break;
    }
    // exp(-i theta) = cos(theta) - i sin(theta)
    entries_[j] = {c, 0.0 - s};
  }
}

}  // namespace swdft
