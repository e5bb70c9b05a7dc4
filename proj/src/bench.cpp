#include "swdft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "swdft/instrument.hpp"
#include "swdft/oracle.hpp"
#include "swdft/schedule.hpp"
#include "swdft/tree2d.hpp"
#include "swdft/twiddle.hpp"

namespace swdft::bench {

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::naive:
      return "naive";
    case Algorithm::swfft:
      return "swfft";
    case Algorithm::tree:
      return "tree";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "naive") return Algorithm::naive;
  if (text == "fft" || text == "swfft") return Algorithm::swfft;
  if (text == "tree") return Algorithm::tree;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

TreeOpBreakdown tree_op_breakdown(std::span<const std::size_t> dims, const WindowSpec& spec) {
  const auto positions = window_positions(dims, spec);
  TreeOpBreakdown out;
  out.interior_windows = 1;
  for (std::size_t p : positions) out.interior_windows *= p;
  out.per_window = 2 * (static_cast<std::uint64_t>(spec.volume()) - 1);

  for (std::size_t l = 1; l <= spec.total_levels(); ++l) {
    const LevelGeometry g = level_geometry(l, spec);
    std::uint64_t trees = 1;
    for (std::size_t d = 0; d < dims.size(); ++d) trees *= dims[d] - g.thresholds[d];
    out.total += trees * g.node_count();
  }
  out.boundary = out.total - out.interior_windows * out.per_window;
  return out;
}

std::uint64_t predict_ops(Algorithm algorithm, std::size_t N0, std::size_t N1, std::size_t n0,
                          std::size_t n1) {
  const std::size_t dims[] = {N0, N1};
  const std::size_t sizes[] = {n0, n1};
  const WindowSpec spec = WindowSpec::from_sizes(sizes);
  const std::uint64_t windows = static_cast<std::uint64_t>(N0 - n0 + 1) * (N1 - n1 + 1);
  spec.check_fits(dims);
  const std::uint64_t volume = spec.volume();
  switch (algorithm) {
    case Algorithm::naive:
      return windows * volume * volume;
    case Algorithm::swfft:
      return windows * (volume / 2) * spec.total_levels();
    case Algorithm::tree:
      return tree_op_breakdown(dims, spec).total;
  }
  return 0;
}

NdArray random_array(std::vector<std::size_t> dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  NdArray out(std::move(dims));
  for (ComplexSample& v : out.data()) {
    const double re = dist(rng);
    v = {re, dist(rng)};
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double time_median(const std::function<void()>& body, int repetitions) {
  std::vector<double> samples;
  for (int r = 0; r < std::max(repetitions, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(stop - start).count());
  }
  return median(std::move(samples));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  const NdArray x = random_array({config.rows, config.cols}, config.seed);
  std::vector<Algorithm> algorithms = config.algorithms;
  std::sort(algorithms.begin(), algorithms.end());
  algorithms.erase(std::unique(algorithms.begin(), algorithms.end()), algorithms.end());
  std::vector<std::size_t> windows = config.windows;
  std::sort(windows.begin(), windows.end());

  std::vector<BenchRecord> records;
  for (Algorithm algorithm : algorithms) {
    for (std::size_t n : windows) {
      const std::size_t sizes[] = {n, n};
      const WindowSpec spec = WindowSpec::from_sizes(sizes);
      BenchRecord rec;
      rec.algorithm = algorithm;
      rec.N0 = config.rows;
      rec.N1 = config.cols;
      rec.n0 = n;
      rec.n1 = n;
      rec.ops = predict_ops(algorithm, config.rows, config.cols, n, n);

      const MemoryEstimate memory = algorithm == Algorithm::tree
                                        ? estimate_tree_memory(x.dims(), spec)
                                        : estimate_output_memory(x.dims(), spec);
      if (memory.total_bytes() > config.memory_budget) {
        rec.skipped = true;
        rec.reason = "requires " + std::to_string(memory.total_bytes()) + " bytes";
        rec.seconds = std::numeric_limits<double>::quiet_NaN();
        rec.peak_bytes = memory.total_bytes();
        records.push_back(std::move(rec));
        continue;
      }

      switch (algorithm) {
        case Algorithm::naive:
          rec.seconds = time_median(
              [&] { (void)oracle::swdft_2d_naive(x, spec, config.memory_budget); },
              config.repetitions);
          rec.peak_bytes = memory.total_bytes();
          break;
        case Algorithm::swfft:
          rec.seconds = time_median(
              [&] { (void)oracle::swfft_2d(x, spec, config.memory_budget); }, config.repetitions);
          rec.peak_bytes = memory.total_bytes();
          break;
        case Algorithm::tree: {
          OpCounter ops;
          MemoryTracker tracker;
          TransformOptions options;
          options.threads = config.threads;
          options.memory_budget = config.memory_budget;
          rec.seconds = time_median(
              [&] {
                ops.reset();
                options.ops = &ops;
                options.memory = &tracker;
                (void)tree_swdft_2d(x, spec, options);
              },
              config.repetitions);
          rec.ops = ops.total();
          rec.peak_bytes = tracker.peak_bytes();
          break;
        }
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "algorithm,N0,N1,n0,n1,seconds,ops,peak_bytes\n";
  for (const BenchRecord& r : records) {
    out << to_string(r.algorithm) << ',' << r.N0 << ',' << r.N1 << ',' << r.n0 << ',' << r.n1
        << ',';
    if (r.skipped) {
      out << "nan";
    } else {
      out << r.seconds;
    }
    out << ',' << r.ops << ',' << r.peak_bytes << '\n';
  }
}

}  // namespace swdft::bench
