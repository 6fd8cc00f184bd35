#include "trustsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "trustsim/errors.hpp"
#include "trustsim/stats.hpp"

namespace trustsim {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RunSummary run_repetition(const SimParams& params, std::uint64_t master_seed,
                          std::size_t index) {
  Rng rng(derive_seed(master_seed, index));
  const RunResult r = run(params, rng);
  return {r.converged, r.t_star, r.final_avg_trust()};
}

BatchResult aggregate(const SimParams& params, std::uint64_t master_seed,
                      std::span<const RunSummary> by_index) {
  BatchResult out;
  out.params = params;
  out.repetitions = by_index.size();
  out.master_seed = master_seed;

  std::vector<double> times;
  for (const auto& s : by_index) {
    if (s.converged) {
      times.push_back(static_cast<double>(*s.t_star));
    } else {
      out.final_avg_trusts.push_back(s.final_avg_trust);
    }
  }
  out.converged_count = times.size();
  if (!times.empty()) out.i2c_mean = mean(times);
  if (times.size() >= 2) out.i2c_stddev = mean_stddev(times).stddev;
  return out;
}

BatchResult run_batch(const SimParams& params, std::size_t repetitions,
                      std::uint64_t master_seed, BatchOptions options) {
  params.validate();
  if (repetitions == 0) throw ConfigError("repetitions must be at least 1");

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(
                                                 repetitions, 256)));

  std::vector<RunSummary> summaries(repetitions);
  if (threads == 1) {
    for (std::size_t i = 0; i < repetitions; ++i) {
      summaries[i] = run_repetition(params, master_seed, i);
    }
    return aggregate(params, master_seed, summaries);
  }

  // Workers pull indices; each result lands in its own slot, so the reduction
  // below sees the same index order whatever the scheduling was.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < repetitions; i = next++) {
          try {
            summaries[i] = run_repetition(params, master_seed, i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(params, master_seed, summaries);
}

std::size_t comfort_for(std::size_t n_users) { return (6 * n_users + 5) / 10; }

std::vector<std::size_t> default_n_grid() {
  return {20, 40, 60, 80, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
}

namespace {

// Hundredths are divided once so each value is the double nearest the decimal.
std::vector<double> phi_range(int first_hundredths, int last_hundredths, int step) {
  std::vector<double> grid;
  for (int k = first_hundredths; k <= last_hundredths; k += step) grid.push_back(k / 100.0);
  return grid;
}

}  // namespace

std::vector<double> coarse_phi_grid() { return phi_range(50, 200, 10); }

std::vector<double> fine_phi_grid() { return phi_range(140, 160, 1); }

std::vector<NSweepRow> experiment_n_sweep(std::span<const std::size_t> n_values,
                                          const SweepSettings& settings) {
  for (auto n : n_values) {
    if (n <= 1) throw ConfigError("N sweep requires every N > 1");
  }
  std::vector<NSweepRow> rows;
  rows.reserve(n_values.size());
  for (auto n : n_values) {
    SimParams p;
    p.n_users = n;
    p.comfort_level = comfort_for(n);
    p.beta = kSweepBeta;
    p.gamma = kSweepBeta;
    p.max_iterations = settings.max_iterations.value_or(kNSweepMaxIterations);
    p.initial_trust = settings.initial_trust;
    p.rules = settings.rules;
    p.seed = settings.master_seed;
    rows.push_back({n, p.comfort_level,
                    run_batch(p, settings.repetitions, settings.master_seed, settings.batch)});
  }
  return rows;
}

std::vector<PhiSweepRow> experiment_phi_sweep(std::span<const double> phi_values,
                                              const SweepSettings& settings) {
  for (auto phi : phi_values) {
    if (!(phi > 0.0) || !std::isfinite(phi)) throw ConfigError("phi sweep requires every phi > 0");
  }
  std::vector<PhiSweepRow> rows;
  rows.reserve(phi_values.size());
  for (auto phi : phi_values) {
    SimParams p;
    p.n_users = kPhiSweepUsers;
    p.comfort_level = kPhiSweepComfort;
    p.beta = kSweepBeta;
    p.gamma = gamma_from_phi(phi, kSweepBeta);
    p.max_iterations = settings.max_iterations.value_or(kPhiSweepMaxIterations);
    p.initial_trust = settings.initial_trust;
    p.rules = settings.rules;
    p.seed = settings.master_seed;
    rows.push_back({phi, p.gamma,
                    run_batch(p, settings.repetitions, settings.master_seed, settings.batch)});
  }
  return rows;
}

}  // namespace trustsim
