#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trustsim/engine.hpp"
#include "trustsim/model.hpp"

namespace trustsim {

/**
 * Seed for repetition `index` of a batch driven by `master_seed`.
 *
 * SplitMix64: the finalizer is applied to master + (index + 1) * 0x9E3779B97F4A7C15.
 * The finalizer is a bijection on 64-bit words and the golden-ratio increment
 * is odd, so the mapping is injective in `index` for a fixed master and in
 * `master_seed` for a fixed index. This function is part of the output format
 * contract: changing it changes every published result.
 */
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// What a batch keeps from one run.
struct RunSummary {
  bool converged = false;
  std::optional<std::size_t> t_star;
  double final_avg_trust = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// Runs repetition `index` of a batch with seed derive_seed(master_seed, index).
RunSummary run_repetition(const SimParams& params, std::uint64_t master_seed,
                          std::size_t index);

struct BatchResult {
  SimParams params;  ///< template; params.seed is unused, per-run seeds are derived
  std::size_t repetitions = 0;
  std::uint64_t master_seed = 0;
  std::size_t converged_count = 0;
  std::optional<double> i2c_mean;    ///< mean t* over converged runs
  std::optional<double> i2c_stddev;  ///< sample stddev over converged runs (needs >= 2)
  std::vector<double> final_avg_trusts;  ///< terminal mean trust, one per non-converged run

  friend bool operator==(const BatchResult& a, const BatchResult& b) {
    return a.repetitions == b.repetitions && a.master_seed == b.master_seed &&
           a.converged_count == b.converged_count && a.i2c_mean == b.i2c_mean &&
           a.i2c_stddev == b.i2c_stddev && a.final_avg_trusts == b.final_avg_trusts;
  }
};

/// Reduces index-ordered run summaries into a BatchResult.
BatchResult aggregate(const SimParams& params, std::uint64_t master_seed,
                      std::span<const RunSummary> by_index);

struct BatchOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Throws ConfigError for invalid params or zero repetitions.
BatchResult run_batch(const SimParams& params, std::size_t repetitions,
                      std::uint64_t master_seed, BatchOptions options = {});

/// Shared knobs of the two sweeps. max_iterations falls back to the
/// experiment's own default (250 for the N sweep, 5000 for the phi sweep).
struct SweepSettings {
  std::size_t repetitions = 100;
  std::uint64_t master_seed = 1;
  std::optional<std::size_t> max_iterations;
  InitialTrust initial_trust = InitialTrust::uniform();
  Rules rules = Rules::replication();
  BatchOptions batch;
};

struct NSweepRow {
  std::size_t n_users = 0;
  std::size_t comfort_level = 0;
  BatchResult batch;
};

struct PhiSweepRow {
  double phi = 0.0;  ///< exactly as configured
  double gamma = 0.0;
  BatchResult batch;
};

inline constexpr double kSweepBeta = 0.05;
inline constexpr std::size_t kNSweepMaxIterations = 250;
inline constexpr std::size_t kPhiSweepMaxIterations = 5000;
inline constexpr std::size_t kPhiSweepUsers = 100;
inline constexpr std::size_t kPhiSweepComfort = 60;

/// round-half-up(0.6 * n), computed in integers.
std::size_t comfort_for(std::size_t n_users);

/// N = 20, 40, 60, 80, 100, 200, ..., 1000.
std::vector<std::size_t> default_n_grid();
/// phi = 0.5, 0.6, ..., 2.0.
std::vector<double> coarse_phi_grid();
/// phi = 1.40, 1.41, ..., 1.60.
std::vector<double> fine_phi_grid();

/// L = comfort_for(N), beta = gamma = 0.05. Throws ConfigError for N <= 1.
std::vector<NSweepRow> experiment_n_sweep(std::span<const std::size_t> n_values,
                                          const SweepSettings& settings = {});

/// N = 100, L = 60, beta = 0.05, gamma = phi * beta. Throws ConfigError for phi <= 0.
std::vector<PhiSweepRow> experiment_phi_sweep(std::span<const double> phi_values,
                                              const SweepSettings& settings = {});

}  // namespace trustsim
