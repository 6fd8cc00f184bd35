#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trustsim/model.hpp"
#include "trustsim/rng.hpp"

namespace trustsim {

struct StepStats {
  std::size_t t = 0;           ///< iteration index after the step (1-based)
  std::size_t attendance = 0;  ///< O^t
  double avg_trust = 0.0;      ///< mean trust after the update stage

  friend bool operator==(const StepStats&, const StepStats&) = default;
};

struct SimulationState {
  SimParams params;
  std::vector<UserState> users;
  std::size_t t = 0;

  std::vector<double> trusts() const;
};

struct RunResult {
  bool converged = false;
  std::optional<std::size_t> t_star;
  std::vector<StepStats> trajectory;
  std::vector<double> final_trusts;

  double final_avg_trust() const { return average_trust(final_trusts); }
};

/// Draws one trust per user (in index order) according to the params'
/// initial trust policy. Throws ConfigError on invalid params.
SimulationState init_population(const SimParams& params, Rng& rng);

/**
 * Update stage for already-known recommendations and decisions.
 *
 * Attendance is counted once over all decisions; every user's recommendation
 * is then judged against that single value and all trusts move together.
 * Exposed separately from step() so a step can be replayed with forced
 * decisions.
 */
StepStats resolve_step(SimulationState& state, std::span<const Action> recommendations,
                       std::span<const Action> decisions);

/// One full iteration: recommend, decide (one uniform draw per user in index
/// order, after the recommender's draws), then resolve_step().
StepStats step(SimulationState& state, Rng& rng);

/// True iff every user fully trusts the recommender (trust >= 1; with a
/// clamped ceiling this is exact equality with 1).
bool is_converged(const SimulationState& state);

/// Runs until the first time is_converged() holds (checked at t = 0 and after
/// every step) or max_iterations steps have executed.
RunResult run(const SimParams& params, Rng& rng);

/// Same as above with a generator seeded from params.seed.
RunResult run(const SimParams& params);

}  // namespace trustsim
