#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swdft/coefficients.hpp"
#include "swdft/ndarray.hpp"
#include "swdft/window.hpp"

// Reference transforms. These are literal transcriptions of the defining sums
// (and a textbook radix-2 FFT), kept free of any state shared with the tree
// kernels so they can serve as independent checks and benchmark baselines.
namespace swdft::oracle {

/// out[k] = sum_j x[j] w_n^{-jk}, unnormalized, any n >= 1.
std::vector<ComplexSample> dft_naive(std::span<const ComplexSample> x);

/// Decimation-in-time radix-2 FFT with natural-order output. Combines
/// sub-transforms as even + w^{-k} * odd, which is the tree recurrence's
/// operand order, so per-window results match the tree transforms exactly.
/// Throws InvalidWindowError for non-power-of-two lengths.
std::vector<ComplexSample> fft_radix2(std::span<const ComplexSample> x);

CoefficientArray swdft_1d_naive(const NdArray& x, const WindowSpec& spec,
                                std::uint64_t memory_budget = kDefaultMemoryBudget);

CoefficientArray swdft_2d_naive(const NdArray& x, const WindowSpec& spec,
                                std::uint64_t memory_budget = kDefaultMemoryBudget);

/// k nested sums with kernel prod_i w_{n_i}^{-j_i k_i}; any rank.
CoefficientArray swdft_kd_naive(const NdArray& x, const WindowSpec& spec,
                                std::uint64_t memory_budget = kDefaultMemoryBudget);

/// fft_radix2 applied to every window of a 1D signal.
CoefficientArray swfft_1d(const NdArray& x, const WindowSpec& spec,
                          std::uint64_t memory_budget = kDefaultMemoryBudget);

/// Row-column FFT in every window: length-n_1 FFTs of the window's rows, then
/// length-n_0 FFTs down each resulting column.
CoefficientArray swfft_2d(const NdArray& x, const WindowSpec& spec,
                          std::uint64_t memory_budget = kDefaultMemoryBudget);

}  // namespace swdft::oracle
