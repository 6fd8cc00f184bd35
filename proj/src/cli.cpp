#include "trustsim/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "trustsim/errors.hpp"

namespace trustsim::cli {

namespace {

constexpr const char* kFormatVersion = "1";

// Flag values as typed, before defaults and validation are applied.
struct RawOptions {
  std::size_t users = 100;
  std::size_t comfort = 60;
  std::optional<std::size_t> capacity;
  double beta = 0.05;
  std::optional<double> gamma;
  std::optional<double> phi;
  std::optional<std::size_t> max_iters;
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::string init_trust = "uniform";
  std::string rules = "replication";
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  bool fine = false;
  std::vector<std::size_t> n_grid;
  std::vector<double> phi_grid;
  std::string fit_input;
  std::string model = "power";
  std::string x_col;
  std::string y_col;
};

void add_model_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--users", raw.users, "Number of users N")->capture_default_str();
  sub->add_option("--comfort", raw.comfort, "Comfort level L")->capture_default_str();
  sub->add_option("--capacity", raw.capacity, "Resource capacity C (reported only)");
  sub->add_option("--beta", raw.beta, "Positive feedback")->capture_default_str();
  auto* gamma = sub->add_option("--gamma", raw.gamma, "Negative feedback (default 0.05)");
  auto* phi = sub->add_option("--phi", raw.phi, "Negative feedback as a multiple of beta");
  gamma->excludes(phi);
}

void add_run_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--max-iters", raw.max_iters, "Iteration cap");
  sub->add_option("--seed", raw.seed, "Seed (master seed for repeated runs)")->capture_default_str();
  sub->add_option("--init-trust", raw.init_trust, "uniform | constant:<v>")->capture_default_str();
  sub->add_option("--rules", raw.rules, "literal | replication")
      ->check(CLI::IsMember({"literal", "replication"}))
      ->capture_default_str();
}

void add_output_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--out", raw.out, "Output file (default: stdout)");
  sub->add_option("--format", raw.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_batch_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--reps", raw.reps, "Repetitions")->capture_default_str();
  sub->add_option("--threads", raw.threads, "Worker threads (0 = all cores)");
}

SimParams resolve_params(const RawOptions& raw) {
  SimParams p;
  p.n_users = raw.users;
  p.comfort_level = raw.comfort;
  p.capacity = raw.capacity;
  p.beta = raw.beta;
  p.gamma = raw.phi ? gamma_from_phi(*raw.phi, raw.beta) : raw.gamma.value_or(0.05);
  p.max_iterations = raw.max_iters.value_or(kNSweepMaxIterations);
  p.initial_trust = parse_initial_trust(raw.init_trust);
  p.seed = raw.seed;
  p.rules = parse_rules(raw.rules);
  return p;
}

std::string join(const auto& values, auto&& fmt) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ";";
    out += fmt(v);
  }
  return out;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::kSimulate: return "simulate";
    case Command::kBatch: return "batch";
    case Command::kExp1: return "exp1";
    case Command::kExp2: return "exp2";
    case Command::kFit: return "fit";
  }
  return "?";
}

CliConfig parse_cli(const std::vector<std::string>& args) {
  RawOptions raw;
  CLI::App app{"Trust dynamics between users and a capacity-constrained recommender", "trustsim"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Single run; writes the trajectory");
  add_model_options(simulate, raw);
  add_run_options(simulate, raw);
  add_output_options(simulate, raw);

  auto* batch = app.add_subcommand("batch", "Repeated runs at fixed parameters");
  add_model_options(batch, raw);
  add_run_options(batch, raw);
  add_batch_options(batch, raw);
  add_output_options(batch, raw);

  auto* exp1 = app.add_subcommand("exp1", "Sweep over N with L = 0.6 N, beta = gamma = 0.05");
  add_run_options(exp1, raw);
  add_batch_options(exp1, raw);
  exp1->add_option("--grid", raw.n_grid, "Comma-separated N values")->delimiter(',');
  add_output_options(exp1, raw);

  auto* exp2 = app.add_subcommand("exp2", "Sweep over phi with N = 100, L = 60, beta = 0.05");
  add_run_options(exp2, raw);
  add_batch_options(exp2, raw);
  exp2->add_flag("--fine", raw.fine, "Use phi = 1.40, 1.41, ..., 1.60");
  auto* grid = exp2->add_option("--grid", raw.phi_grid, "Comma-separated phi values")->delimiter(',');
  exp2->get_option("--fine")->excludes(grid);
  add_output_options(exp2, raw);

  auto* fit = app.add_subcommand("fit", "Fit a power law or parabola to two CSV columns");
  fit->add_option("input", raw.fit_input, "CSV file")->required();
  fit->add_option("--model", raw.model, "power | quadratic")
      ->check(CLI::IsMember({"power", "quadratic"}))
      ->capture_default_str();
  fit->add_option("--x-col", raw.x_col, "x column name (default: first column)");
  fit->add_option("--y-col", raw.y_col, "y column name (default: second column)");
  add_output_options(fit, raw);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::string text = app.help();
    for (const auto* sub : app.get_subcommands()) text = sub->help();
    throw HelpRequested{text};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CliConfig cfg;
  if (simulate->parsed()) cfg.command = Command::kSimulate;
  if (batch->parsed()) cfg.command = Command::kBatch;
  if (exp1->parsed()) cfg.command = Command::kExp1;
  if (exp2->parsed()) cfg.command = Command::kExp2;
  if (fit->parsed()) cfg.command = Command::kFit;

  try {
    cfg.params = resolve_params(raw);
    if (cfg.command == Command::kExp2) {
      cfg.params.max_iterations = raw.max_iters.value_or(kPhiSweepMaxIterations);
    }
    if (cfg.command == Command::kSimulate || cfg.command == Command::kBatch) {
      cfg.params.validate();
    }
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  cfg.phi = raw.phi;
  if (raw.phi && !(*raw.phi >= 0.0)) throw UsageError("--phi must be non-negative");
  cfg.repetitions = raw.reps;
  if (cfg.repetitions == 0) throw UsageError("--reps must be at least 1");
  cfg.seed = raw.seed;
  cfg.threads = raw.threads;
  cfg.fine = raw.fine;

  if (cfg.command == Command::kExp1) {
    cfg.n_grid = raw.n_grid.empty() ? default_n_grid() : raw.n_grid;
    if (std::any_of(cfg.n_grid.begin(), cfg.n_grid.end(), [](auto n) { return n <= 1; })) {
      throw UsageError("exp1 grid values must be greater than 1");
    }
  }
  if (cfg.command == Command::kExp2) {
    cfg.phi_grid = !raw.phi_grid.empty() ? raw.phi_grid
                   : raw.fine            ? fine_phi_grid()
                                         : coarse_phi_grid();
    if (std::any_of(cfg.phi_grid.begin(), cfg.phi_grid.end(), [](auto p) { return !(p > 0.0); })) {
      throw UsageError("exp2 grid values must be positive");
    }
  }

  cfg.fit_input = raw.fit_input;
  cfg.fit_kind = raw.model == "quadratic" ? FitKind::kQuadratic : FitKind::kPowerLaw;
  cfg.x_column = raw.x_col;
  cfg.y_column = raw.y_col;
  if (!raw.out.empty()) cfg.out = raw.out;
  cfg.format = raw.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  return cfg;
}

CommandResult compute(const CliConfig& config) {
  SweepSettings sweep;
  sweep.repetitions = config.repetitions;
  sweep.master_seed = config.seed;
  sweep.max_iterations = config.params.max_iterations;
  sweep.initial_trust = config.params.initial_trust;
  sweep.rules = config.params.rules;
  sweep.batch.threads = config.threads;

  switch (config.command) {
    case Command::kSimulate:
      return run(config.params);
    case Command::kBatch:
      return run_batch(config.params, config.repetitions, config.seed, {config.threads});
    case Command::kExp1:
      return experiment_n_sweep(config.n_grid, sweep);
    case Command::kExp2:
      return experiment_phi_sweep(config.phi_grid, sweep);
    case Command::kFit: {
      std::ifstream in(config.fit_input);
      if (!in) throw IoError("cannot open '" + config.fit_input.string() + "'");
      const auto data = read_xy_csv(in, config.x_column, config.y_column);
      return config.fit_kind == FitKind::kPowerLaw ? power_law_fit(data.points)
                                                   : quadratic_fit(data.points);
    }
  }
  throw std::logic_error("unhandled command");
}

Metadata metadata_for(const CliConfig& config) {
  const auto& p = config.params;
  Metadata meta{{"tool", "trustsim"},
                {"format_version", kFormatVersion},
                {"command", to_string(config.command)}};
  if (config.command == Command::kFit) {
    meta.emplace_back("input", config.fit_input.filename().string());
    meta.emplace_back("model", config.fit_kind == FitKind::kPowerLaw ? "power" : "quadratic");
    meta.emplace_back("x_column", config.x_column.empty() ? "<first>" : config.x_column);
    meta.emplace_back("y_column", config.y_column.empty() ? "<second>" : config.y_column);
    return meta;
  }

  meta.emplace_back("rules", trustsim::to_string(p.rules));
  meta.emplace_back("init_trust", trustsim::to_string(p.initial_trust));
  meta.emplace_back("max_iterations", std::to_string(p.max_iterations));
  switch (config.command) {
    case Command::kSimulate:
    case Command::kBatch:
      meta.emplace_back(config.command == Command::kSimulate ? "seed" : "master_seed",
                        std::to_string(config.seed));
      if (config.command == Command::kBatch) {
        meta.emplace_back("repetitions", std::to_string(config.repetitions));
      }
      meta.emplace_back("users", std::to_string(p.n_users));
      meta.emplace_back("comfort", std::to_string(p.comfort_level));
      meta.emplace_back("capacity", p.capacity ? std::to_string(*p.capacity) : "unset");
      meta.emplace_back("beta", format_double(p.beta));
      meta.emplace_back("gamma", format_double(p.gamma));
      if (config.phi) meta.emplace_back("phi", format_double(*config.phi));
      break;
    case Command::kExp1:
      meta.emplace_back("master_seed", std::to_string(config.seed));
      meta.emplace_back("repetitions", std::to_string(config.repetitions));
      meta.emplace_back("beta", format_double(kSweepBeta));
      meta.emplace_back("gamma", format_double(kSweepBeta));
      meta.emplace_back("comfort_rule", "round_half_up(0.6*n)");
      meta.emplace_back("n_grid", join(config.n_grid, [](auto n) { return std::to_string(n); }));
      break;
    case Command::kExp2:
      meta.emplace_back("master_seed", std::to_string(config.seed));
      meta.emplace_back("repetitions", std::to_string(config.repetitions));
      meta.emplace_back("users", std::to_string(kPhiSweepUsers));
      meta.emplace_back("comfort", std::to_string(kPhiSweepComfort));
      meta.emplace_back("beta", format_double(kSweepBeta));
      meta.emplace_back("phi_grid", join(config.phi_grid, [](double v) { return format_double(v); }));
      break;
    case Command::kFit:
      break;
  }
  return meta;
}

void write_outputs(const CommandResult& results, const CliConfig& config,
                   std::ostream& stdout_sink, std::ostream& diagnostics) {
  const Metadata meta = metadata_for(config);
  std::string main;
  std::optional<std::string> companion;

  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RunResult>) {
          main = render_trajectory(r, meta, config.format);
        } else if constexpr (std::is_same_v<T, BatchResult>) {
          main = render_batch(r, meta, config.format);
          if (config.format == OutputFormat::kCsv) companion = render_batch_distributions_csv(r, meta);
        } else if constexpr (std::is_same_v<T, std::vector<NSweepRow>>) {
          main = render_n_sweep(r, meta, config.format);
        } else if constexpr (std::is_same_v<T, std::vector<PhiSweepRow>>) {
          main = render_phi_sweep(r, meta, config.format);
          if (config.format == OutputFormat::kCsv) companion = render_phi_distributions_csv(r, meta);
        } else {
          main = render_fit(r, meta, config.format);
        }
      },
      results);

  if (!config.out) {
    stdout_sink << main;
    if (companion) {
      diagnostics << "note: per-run final trust distributions are written only with --out\n";
    }
    return;
  }
  write_file(*config.out, main);
  if (companion) write_file(distributions_path(*config.out), *companion);
}

int execute(const CliConfig& config, std::ostream& stdout_sink, std::ostream& diagnostics) {
  try {
    write_outputs(compute(config), config, stdout_sink, diagnostics);
    return 0;
  } catch (const std::exception& e) {
    diagnostics << "trustsim: error: " << e.what() << "\n";
    return 1;
  }
}

int run_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CliConfig config;
  try {
    config = parse_cli(args);
  } catch (const HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "trustsim: usage error: " << e.what() << "\nRun 'trustsim --help' for usage.\n";
    return 2;
  }
  return execute(config, std::cout, std::cerr);
}

}  // namespace trustsim::cli
