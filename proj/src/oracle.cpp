#include "swdft/oracle.hpp"

#include <cmath>
#include <numbers>

#include "swdft/twiddle.hpp"

namespace swdft::oracle {
namespace {

ComplexSample kernel(std::size_t jk, std::size_t n) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(jk % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

std::vector<ComplexSample> kernel_table(std::size_t n) {
  std::vector<ComplexSample> table(n);
  for (std::size_t r = 0; r < n; ++r) table[r] = kernel(r, n);
  return table;
}

// Recursive decimation in time. `out` and `work` are disjoint length-L
// buffers; the two halves alternate roles down the recursion.
void fft_recursive(const ComplexSample* in, std::size_t in_stride, std::size_t length,
                   ComplexSample* out, ComplexSample* work, const TwiddleVector& twiddles,
                   std::size_t twiddle_stride) {
  if (length == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t half = length / 2;
  fft_recursive(in, 2 * in_stride, half, work, out, twiddles, 2 * twiddle_stride);
  fft_recursive(in + in_stride, 2 * in_stride, half, work + half, out + half, twiddles,
                2 * twiddle_stride);
  for (std::size_t k = 0; k < length; ++k) {
    const std::size_t r = k & (half - 1);
    out[k] = butterfly(work[r], twiddles[k * twiddle_stride], work[half + r]);
  }
}

void fft_into(std::span<const ComplexSample> x, std::span<ComplexSample> out,
              std::span<ComplexSample> work, const TwiddleVector& twiddles) {
  fft_recursive(x.data(), 1, x.size(), out.data(), work.data(), twiddles, 1);
}

CoefficientArray allocate_output(const NdArray& x, const WindowSpec& spec,
                                 std::uint64_t memory_budget) {
  spec.check_fits(x.dims());
  check_budget(estimate_output_memory(x.dims(), spec).output_bytes(), memory_budget);
  return CoefficientArray(x.dims(), spec.with_normalization(Normalization::none));
}

}  // namespace

std::vector<ComplexSample> dft_naive(std::span<const ComplexSample> x) {
  const std::size_t n = x.size();
  std::vector<ComplexSample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexSample sum{};
    for (std::size_t j = 0; j < n; ++j) sum += x[j] * kernel(j * k, n);
    out[k] = sum;
  }
  return out;
}

std::vector<ComplexSample> fft_radix2(std::span<const ComplexSample> x) {
  const TwiddleVector twiddles(x.size());
  std::vector<ComplexSample> out(x.size());
  std::vector<ComplexSample> work(x.size());
  fft_into(x, out, work, twiddles);
  return out;
}

CoefficientArray swdft_1d_naive(const NdArray& x, const WindowSpec& spec, std::uint64_t memory_budget) {
  if (x.rank() != 1 || spec.rank() != 1) throw ShapeError("swdft_1d_naive expects a 1D signal");
  CoefficientArray out = allocate_output(x, spec, memory_budget);
  const std::size_t n = spec.size(0);
  const auto signal = x.data();
  for (std::size_t q = 0; q < out.position_count(); ++q) {
    const auto coeffs = dft_naive(signal.subspan(q, n));
    std::copy(coeffs.begin(), coeffs.end(), out.window_at(q).begin());
  }
  return normalize(std::move(out), spec.normalization());
}

CoefficientArray swdft_2d_naive(const NdArray& x, const WindowSpec& spec, std::uint64_t memory_budget) {
  if (x.rank() != 2 || spec.rank() != 2) throw ShapeError("swdft_2d_naive expects a 2D array");
  CoefficientArray out = allocate_output(x, spec, memory_budget);
  const std::size_t n0 = spec.size(0);
  const std::size_t n1 = spec.size(1);
  const std::size_t cols = x.extent(1);
  const auto w0 = kernel_table(n0);
  const auto w1 = kernel_table(n1);
  const std::size_t P0 = out.positions()[0];
  const std::size_t P1 = out.positions()[1];

  for (std::size_t q0 = 0; q0 < P0; ++q0) {
    for (std::size_t q1 = 0; q1 < P1; ++q1) {
      auto window = out.window_at(q0 * P1 + q1);
      for (std::size_t k0 = 0; k0 < n0; ++k0) {
        for (std::size_t k1 = 0; k1 < n1; ++k1) {
          ComplexSample sum{};
          for (std::size_t j0 = 0; j0 < n0; ++j0) {
            for (std::size_t j1 = 0; j1 < n1; ++j1) {
              sum += x[(q0 + j0) * cols + q1 + j1] * w0[(j0 * k0) % n0] * w1[(j1 * k1) % n1];
            }
          }
          window[k0 * n1 + k1] = sum;
        }
      }
    }
  }
  return normalize(std::move(out), spec.normalization());
}

CoefficientArray swdft_kd_naive(const NdArray& x, const WindowSpec& spec, std::uint64_t memory_budget) {
  CoefficientArray out = allocate_output(x, spec, memory_budget);
  const std::size_t k = spec.rank();
  const auto sizes = spec.sizes();
  std::vector<std::vector<ComplexSample>> tables;
  for (std::size_t n : sizes) tables.push_back(kernel_table(n));

  const std::vector<std::size_t> zeros(k, 0);
  std::vector<std::size_t> pos(k, 0);
  std::size_t flat_pos = 0;
  do {
    auto window = out.window_at(flat_pos++);
    std::vector<std::size_t> freq(k, 0);
    std::size_t flat_freq = 0;
    do {
      ComplexSample sum{};
      std::vector<std::size_t> j(k, 0);
      do {
        std::size_t offset = 0;
        for (std::size_t d = 0; d < k; ++d) offset += (pos[d] + j[d]) * x.strides()[d];
        ComplexSample term = x[offset];
        for (std::size_t d = 0; d < k; ++d) term *= tables[d][(j[d] * freq[d]) % sizes[d]];
        sum += term;
      } while (next_index(j, zeros, sizes));
      window[flat_freq++] = sum;
    } while (next_index(freq, zeros, sizes));
  } while (next_index(pos, zeros, out.positions()));
  return normalize(std::move(out), spec.normalization());
}

CoefficientArray swfft_1d(const NdArray& x, const WindowSpec& spec, std::uint64_t memory_budget) {
  if (x.rank() != 1 || spec.rank() != 1) throw ShapeError("swfft_1d expects a 1D signal");
  CoefficientArray out = allocate_output(x, spec, memory_budget);
  const std::size_t n = spec.size(0);
  const TwiddleVector twiddles(n);
  std::vector<ComplexSample> work(n);
  const auto signal = x.data();
  for (std::size_t q = 0; q < out.position_count(); ++q) {
    fft_into(signal.subspan(q, n), out.window_at(q), work, twiddles);
  }
  return normalize(std::move(out), spec.normalization());
}

CoefficientArray swfft_2d(const NdArray& x, const WindowSpec& spec, std::uint64_t memory_budget) {
  if (x.rank() != 2 || spec.rank() != 2) throw ShapeError("swfft_2d expects a 2D array");
  CoefficientArray out = allocate_output(x, spec, memory_budget);
  const std::size_t n0 = spec.size(0);
  const std::size_t n1 = spec.size(1);
  const std::size_t cols = x.extent(1);
  const TwiddleVector row_twiddles(n1);
  const TwiddleVector col_twiddles(n0);
  const std::size_t P0 = out.positions()[0];
  const std::size_t P1 = out.positions()[1];

  std::vector<ComplexSample> rows(n0 * n1);
  std::vector<ComplexSample> column(n0);
  std::vector<ComplexSample> column_out(n0);
  std::vector<ComplexSample> work(std::max(n0, n1));
  const auto data = x.data();

  for (std::size_t q0 = 0; q0 < P0; ++q0) {
    for (std::size_t q1 = 0; q1 < P1; ++q1) {
      for (std::size_t j0 = 0; j0 < n0; ++j0) {
        fft_into(data.subspan((q0 + j0) * cols + q1, n1),
                 std::span(rows).subspan(j0 * n1, n1), std::span(work).first(n1), row_twiddles);
      }
      auto window = out.window_at(q0 * P1 + q1);
      for (std::size_t k1 = 0; k1 < n1; ++k1) {
        for (std::size_t j0 = 0; j0 < n0; ++j0) column[j0] = rows[j0 * n1 + k1];
        fft_into(column, column_out, std::span(work).first(n0), col_twiddles);
        for (std::size_t k0 = 0; k0 < n0; ++k0) window[k0 * n1 + k1] = column_out[k0];
      }
    }
  }
  return normalize(std::move(out), spec.normalization());
}

}  // namespace swdft::oracle
