#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swdft/ndarray.hpp"
#include "swdft/window.hpp"

namespace swdft::bench {

enum class Algorithm { naive, swfft, tree };

std::string_view to_string(Algorithm algorithm) noexcept;
/// Accepts "naive", "fft" / "swfft", "tree".
Algorithm parse_algorithm(std::string_view text);

/// Tree operation count split into complete-window and boundary parts.
struct TreeOpBreakdown {
  std::uint64_t interior_windows = 0;
  std::uint64_t per_window = 0;  // 2 (prod n - 1)
  std::uint64_t boundary = 0;    // nodes of partial trees outside the output
  std::uint64_t total = 0;
};

/// Counts, level by level, the tree positions passing the validity
/// thresholds; works for any rank.
TreeOpBreakdown tree_op_breakdown(std::span<const std::size_t> dims, const WindowSpec& spec);

/// tree: P0 P1 * 2(n0 n1 - 1) + boundary; naive: P0 P1 n0^2 n1^2 kernel
/// terms; swfft: P0 P1 (n0 n1 / 2) log2(n0 n1) butterflies.
std::uint64_t predict_ops(Algorithm algorithm, std::size_t N0, std::size_t N1, std::size_t n0,
                          std::size_t n1);

struct BenchConfig {
  std::size_t rows = 100;
  std::size_t cols = 100;
  std::vector<std::size_t> windows{4, 8, 16, 32, 64};
  std::vector<Algorithm> algorithms{Algorithm::naive, Algorithm::swfft, Algorithm::tree};
  int repetitions = 5;
  std::uint64_t seed = 1;
  int threads = 1;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
};

struct BenchRecord {
  Algorithm algorithm = Algorithm::tree;
  std::size_t N0 = 0, N1 = 0, n0 = 0, n1 = 0;
  double seconds = 0.0;  // median wall time
  std::uint64_t ops = 0;
  std::uint64_t peak_bytes = 0;
  bool skipped = false;
  std::string reason;
};

/// One record per (algorithm, window), ordered by algorithm then window
/// size. Configurations over the memory budget are returned as skipped.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// Header `algorithm,N0,N1,n0,n1,seconds,ops,peak_bytes`. Skipped records
/// print `nan` seconds and the required bytes.
void write_csv(std::ostream& out, std::span<const BenchRecord> records);

/// Uniform complex samples in [-1, 1) x [-1, 1) from a seeded mt19937_64.
NdArray random_array(std::vector<std::size_t> dims, std::uint64_t seed);

/// Median wall time of `repetitions` calls, in seconds.
double time_median(const std::function<void()>& body, int repetitions);

double median(std::vector<double> values);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace swdft::bench
