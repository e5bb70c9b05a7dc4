#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swdft/bench.hpp"
#include "swdft/window.hpp"

namespace swdft::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitRuntime = 4;

enum class Subcommand { transform, verify, bench, opcount };

/// Transform route selected by --algorithm.
enum class Route { tree, fft, naive };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  Subcommand subcommand = Subcommand::transform;
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<WindowSpec> window;
  Route route = Route::tree;
  Normalization normalization = Normalization::none;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  std::uint64_t seed = 1;
  int repetitions = 5;
  int threads = 1;
  std::vector<std::size_t> size;                   // opcount, bench
  std::vector<std::size_t> bench_windows{4, 8, 16, 32, 64};
  std::vector<bench::Algorithm> bench_algorithms{bench::Algorithm::naive, bench::Algorithm::swfft,
                                                 bench::Algorithm::tree};
  bool inject_fault = false;  // verify: corrupt one tree output bit
  bool show_help = false;
  std::string help_text;
};

/// Throws UsageError on unknown flags, malformed or non-power-of-two windows,
/// or a missing input file. `--help` sets show_help instead.
CliConfig parse_args(int argc, const char* const* argv);

/// Budget from SWDFT_MEM_BUDGET, or the default when unset.
std::uint64_t default_memory_budget();

int cmd_transform(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_opcount(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses and dispatches; maps errors onto the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swdft::cli
