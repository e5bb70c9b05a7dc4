#include "swdft/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swdft/container.hpp"
#include "swdft/oracle.hpp"
#include "swdft/tree1d.hpp"
#include "swdft/tree2d.hpp"
#include "swdft/treekd.hpp"

namespace swdft::cli {
namespace {

constexpr double kVerifyTolerance = 1e-10;

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::size_t value = 0;
    try {
      value = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed list '" + text + "'");
    }
    if (used != item.size() || value == 0) throw UsageError("malformed list '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

WindowSpec parse_window(const std::string& text, Normalization norm) {
  try {
    return WindowSpec::parse(text, norm);
  } catch (const InvalidWindowError& e) {
    throw UsageError(std::string("--window: ") + e.what());
  }
}

CoefficientArray transform(const NdArray& x, const WindowSpec& spec, Route route,
                           const TransformOptions& options) {
  const std::size_t k = x.rank();
  switch (route) {
    case Route::tree:
      if (k == 1) return tree_swdft_1d(x, spec, options);
      if (k == 2) return tree_swdft_2d(x, spec, options);
      return tree_swdft_kd(x, spec, options);
    case Route::fft:
      if (k == 1) return oracle::swfft_1d(x, spec, options.memory_budget);
      if (k == 2) return oracle::swfft_2d(x, spec, options.memory_budget);
      throw UsageError("--algorithm fft supports 1D and 2D inputs only");
    case Route::naive:
      if (k == 1) return oracle::swdft_1d_naive(x, spec, options.memory_budget);
      if (k == 2) return oracle::swdft_2d_naive(x, spec, options.memory_budget);
      return oracle::swdft_kd_naive(x, spec, options.memory_budget);
  }
  throw UsageError("unknown algorithm");
}

void report_budget(const BudgetExceededError& e, const NdArray& x, const WindowSpec& spec,
                   std::ostream& err) {
  err << "error: " << e.what() << '\n';
  const MemoryEstimate est = estimate_tree_memory(x.dims(), spec);
  err << "output_bytes " << est.output_bytes() << '\n';
  err << "level_buffer_bytes " << est.level_buffer_bytes() << '\n';
}

double max_abs_diff(const CoefficientArray& a, const CoefficientArray& b) {
  double worst = 0.0;
  const auto av = a.values().data();
  const auto bv = b.values().data();
  if (av.size() != bv.size()) return std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < av.size(); ++i) worst = std::max(worst, std::abs(av[i] - bv[i]));
  return worst;
}

bool bitwise_equal(const CoefficientArray& a, const CoefficientArray& b) {
  const auto av = a.values().data();
  const auto bv = b.values().data();
  return av.size() == bv.size() &&
         std::memcmp(av.data(), bv.data(), av.size() * sizeof(ComplexSample)) == 0;
}

}  // namespace

std::uint64_t default_memory_budget() {
  if (const char* env = std::getenv("SWDFT_MEM_BUDGET")) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::strlen(env) && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SWDFT_MEM_BUDGET must be a positive byte count, got '") + env + "'");
  }
  return kDefaultMemoryBudget;
}

CliConfig parse_args(int argc, const char* const* argv) {
  CliConfig config;
  CLI::App app{"Sliding window DFT engine"};
  app.require_subcommand(1);

  std::string input, output, window, algorithm = "tree", norm = "none", size, windows, algorithms;
  std::uint64_t budget = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", budget, "Memory budget in bytes");
    sub->add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* transform = app.add_subcommand("transform", "Sliding-window DFT of an array file");
  transform->add_option("--input", input, "SWDF container or 2D CSV")->required();
  transform->add_option("--output", output, "Coefficient container to write")->required();
  transform->add_option("--window", window, "Window extents, e.g. 8x8")->required();
  transform->add_option("--algorithm", algorithm, "tree | fft | naive");
  transform->add_option("--norm", norm, "none | paper-1d | paper-2d | unitary");
  add_common(transform);

  auto* verify = app.add_subcommand("verify", "Cross-check tree, per-window FFT and naive outputs");
  verify->add_option("--input", input, "SWDF container or 2D CSV")->required();
  verify->add_option("--window", window, "Window extents")->required();
  verify->add_flag("--inject-fault", config.inject_fault, "Flip one bit of the tree output")
      ->group("");
  add_common(verify);

  auto* bench_cmd = app.add_subcommand("bench", "Time naive, swfft and tree on a random array");
  bench_cmd->add_option("--size", size, "Array extents (default 100x100)");
  bench_cmd->add_option("--windows", windows, "Square window sizes, e.g. 4,8,16");
  bench_cmd->add_option("--algorithms", algorithms, "Comma list of naive,fft,tree");
  bench_cmd->add_option("--repetitions", config.repetitions, "Timing repetitions")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", config.seed, "Input generator seed");
  bench_cmd->add_option("--output", output, "CSV path (default stdout)");
  add_common(bench_cmd);

  auto* opcount = app.add_subcommand("opcount", "Predict tree operation count and memory");
  opcount->add_option("--window", window, "Window extents")->required();
  opcount->add_option("--size", size, "Array extents")->required();
  opcount->add_option("--algorithm", algorithm, "tree | fft | naive");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    config.show_help = true;
    config.help_text = app.help();
    return config;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  try {
    config.normalization = parse_normalization(norm);
  } catch (const InvalidWindowError& e) {
    throw UsageError(std::string("--norm: ") + e.what());
  }
  if (algorithm == "tree") {
    config.route = Route::tree;
  } else if (algorithm == "fft" || algorithm == "swfft") {
    config.route = Route::fft;
  } else if (algorithm == "naive") {
    config.route = Route::naive;
  } else {
    throw UsageError("--algorithm must be tree, fft or naive");
  }
  config.memory_budget = budget > 0 ? budget : default_memory_budget();
  config.input = input;
  config.output = output;

  if (*transform) config.subcommand = Subcommand::transform;
  if (*verify) config.subcommand = Subcommand::verify;
  if (*bench_cmd) config.subcommand = Subcommand::bench;
  if (*opcount) config.subcommand = Subcommand::opcount;

  if (!window.empty()) {
    try {
      config.window = parse_window(window, config.normalization);
    } catch (const InvalidWindowError& e) {
      throw UsageError(std::string("--window: ") + e.what());
    }
  }
  if (!size.empty()) {
    try {
      config.size = parse_extents(size);
    } catch (const InvalidWindowError&) {
      throw UsageError("--size: malformed extents '" + size + "'");
    }
  }
  if (!windows.empty()) config.bench_windows = parse_list(windows);
  if (!algorithms.empty()) {
    config.bench_algorithms.clear();
    std::stringstream ss(algorithms);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        config.bench_algorithms.push_back(bench::parse_algorithm(item));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }

  const bool needs_input =
      config.subcommand == Subcommand::transform || config.subcommand == Subcommand::verify;
  if (needs_input && !std::filesystem::exists(config.input)) {
    throw UsageError("input file '" + config.input.string() + "' does not exist");
  }
  if (config.subcommand == Subcommand::opcount && config.size.size() != config.window->rank()) {
    throw UsageError("--size and --window must have the same number of dimensions");
  }
  return config;
}

int cmd_transform(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const NdArray x = read_array(config.input);
  const WindowSpec& spec = *config.window;
  TransformOptions options;
  options.threads = config.threads;
  options.memory_budget = config.memory_budget;
  try {
    spec.check_fits(x.dims());
    const CoefficientArray coeffs = transform(x, spec, config.route, options);
    write_coefficients(config.output, coeffs);
  } catch (const BudgetExceededError& e) {
    report_budget(e, x, spec, err);
    return kExitBudget;
  }
  out << "wrote " << config.output.string() << '\n';
  return kExitOk;
}

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const NdArray x = read_array(config.input);
  const WindowSpec& spec = *config.window;
  TransformOptions options;
  options.threads = config.threads;
  options.memory_budget = config.memory_budget;

  std::optional<CoefficientArray> tree, fft, naive;
  try {
    spec.check_fits(x.dims());
    tree = transform(x, spec, Route::tree, options);
    naive = transform(x, spec, Route::naive, options);
    if (x.rank() <= 2) fft = transform(x, spec, Route::fft, options);
  } catch (const BudgetExceededError& e) {
    report_budget(e, x, spec, err);
    return kExitBudget;
  }

  if (config.inject_fault && !tree->values().empty()) {
    double& target = reinterpret_cast<double*>(tree->values().data().data())[0];
    std::uint64_t bits;
    std::memcpy(&bits, &target, sizeof bits);
    bits ^= 1;
    std::memcpy(&target, &bits, sizeof bits);
  }

  const double err_naive = max_abs_diff(*tree, *naive);
  const bool error_ok = err_naive <= kVerifyTolerance;
  out << "max_err=" << err_naive << '\n';
  if (fft) {
    const bool exact = bitwise_equal(*tree, *fft);
    out << (error_ok ? "max_err<=1e-10" : "max_err>1e-10")
        << " exact_fft_match=" << (exact ? "true" : "false") << '\n';
    return error_ok && exact ? kExitOk : kExitVerifyFailed;
  }
  out << (error_ok ? "max_err<=1e-10" : "max_err>1e-10") << " exact_fft_match=n/a\n";
  return error_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err) {
  bench::BenchConfig bc;
  if (!config.size.empty()) {
    if (config.size.size() != 2) throw UsageError("bench --size must be 2D, e.g. 100x100");
    bc.rows = config.size[0];
    bc.cols = config.size[1];
  }
  bc.windows = config.bench_windows;
  bc.algorithms = config.bench_algorithms;
  bc.repetitions = config.repetitions;
  bc.seed = config.seed;
  bc.threads = config.threads;
  bc.memory_budget = config.memory_budget;
  for (std::size_t n : bc.windows) {
    if (!is_power_of_two(n)) throw UsageError("bench window " + std::to_string(n) + " is not a power of two");
    if (n > bc.rows || n > bc.cols) throw UsageError("bench window " + std::to_string(n) + " exceeds the array");
  }

  const auto records = bench::run_bench(bc);
  for (const auto& r : records) {
    if (r.skipped) err << "skipped " << bench::to_string(r.algorithm) << ' ' << r.n0 << 'x' << r.n1 << ": " << r.reason << '\n';
  }
  if (config.output.empty()) {
    bench::write_csv(out, records);
  } else {
    std::ofstream file(config.output);
    if (!file) throw FormatError("cannot open " + config.output.string());
    bench::write_csv(file, records);
  }
  return kExitOk;
}

int cmd_opcount(const CliConfig& config, std::ostream& out, std::ostream&) {
  const WindowSpec& spec = *config.window;
  spec.check_fits(config.size);
  if (config.route == Route::tree) {
    const auto ops = bench::tree_op_breakdown(config.size, spec);
    out << ops.total << '\n';
    out << "interior_windows " << ops.interior_windows << '\n';
    out << "per_window " << ops.per_window << '\n';
    out << "boundary " << ops.boundary << '\n';
  } else {
    if (spec.rank() != 2) throw UsageError("opcount for fft/naive supports 2D windows only");
    const auto algorithm = config.route == Route::fft ? bench::Algorithm::swfft : bench::Algorithm::naive;
    out << bench::predict_ops(algorithm, config.size[0], config.size[1], spec.size(0), spec.size(1))
        << '\n';
  }
  const MemoryEstimate memory = estimate_tree_memory(config.size, spec);
  out << "output_bytes " << memory.output_bytes() << '\n';
  if (config.route == Route::tree) out << "level_buffer_bytes " << memory.level_buffer_bytes() << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig config;
  try {
    config = parse_args(argc, argv);
    if (config.show_help) {
      out << config.help_text;
      return kExitOk;
    }
    switch (config.subcommand) {
      case Subcommand::transform:
        return cmd_transform(config, out, err);
      case Subcommand::verify:
        return cmd_verify(config, out, err);
      case Subcommand::bench:
        return cmd_bench(config, out, err);
      case Subcommand::opcount:
        return cmd_opcount(config, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WindowTooLargeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ShapeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace swdft::cli
