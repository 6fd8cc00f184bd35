#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trustsim/engine.hpp"
#include "trustsim/experiments.hpp"
#include "trustsim/io.hpp"
#include "trustsim/model.hpp"
#include "trustsim/stats.hpp"

namespace trustsim::cli {

enum class Command { kSimulate, kBatch, kExp1, kExp2, kFit };

std::string to_string(Command c);

struct CliConfig {
  Command command = Command::kSimulate;
  /// Fully resolved model parameters for simulate/batch. For the sweeps only
  /// initial_trust, rules and max_iterations are taken from here.
  SimParams params;
  std::optional<double> phi;  ///< set when gamma was given as --phi
  std::size_t repetitions = 100;
  std::uint64_t seed = 1;
  std::vector<std::size_t> n_grid;
  std::vector<double> phi_grid;
  bool fine = false;
  std::filesystem::path fit_input;
  FitKind fit_kind = FitKind::kPowerLaw;
  std::string x_column;
  std::string y_column;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::kCsv;
  unsigned threads = 0;
};

/// Thrown by parse_cli() for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

/// Parses arguments (without the program name). Throws UsageError on unknown
/// flags, conflicting --gamma/--phi or out-of-range values.
CliConfig parse_cli(const std::vector<std::string>& args);

using CommandResult = std::variant<RunResult, BatchResult, std::vector<NSweepRow>,
                                   std::vector<PhiSweepRow>, FitResult>;

/// Runs the requested computation without producing output.
CommandResult compute(const CliConfig& config);

/// Self-describing header: every run-affecting setting of `config`.
Metadata metadata_for(const CliConfig& config);

/// Writes results to config.out (plus a .dist.csv companion for batch/exp2 CSV
/// output), or to `stdout_sink` when no path is set. Throws IoError.
void write_outputs(const CommandResult& results, const CliConfig& config,
                   std::ostream& stdout_sink, std::ostream& diagnostics);

/// compute() + write_outputs(); returns the process exit status.
int execute(const CliConfig& config, std::ostream& stdout_sink, std::ostream& diagnostics);

/// Full entry point: 0 on success, 1 on runtime/I/O failure, 2 on usage error.
int run_main(int argc, const char* const* argv);

}  // namespace trustsim::cli
