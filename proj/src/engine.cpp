#include "trustsim/engine.hpp"

#include <algorithm>

#include "trustsim/errors.hpp"

namespace trustsim {

std::vector<double> SimulationState::trusts() const {
  std::vector<double> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.trust);
  return out;
}

SimulationState init_population(const SimParams& params, Rng& rng) {
  params.validate();
  SimulationState state{params, std::vector<UserState>(params.n_users), 0};
  for (auto& user : state.users) {
    user.trust = params.initial_trust.kind == InitialTrust::Kind::kUniform
                     ? rng.uniform()
                     : params.initial_trust.value;
  }
  return state;
}

StepStats resolve_step(SimulationState& state, std::span<const Action> recommendations,
                       std::span<const Action> decisions) {
  const auto& p = state.params;
  if (recommendations.size() != state.users.size() || decisions.size() != state.users.size()) {
    throw DomainError("need one recommendation and one decision per user");
  }

  const std::size_t attendance = compute_attendance(decisions);
  // Both qualities depend only on (attendance, L), so classify once per action.
  const auto signed_attendance = static_cast<std::int64_t>(attendance);
  const Quality go_quality =
      classify_recommendation(Action::kGo, signed_attendance, p.comfort_level, p.rules.boundary);
  const Quality stay_quality = classify_recommendation(Action::kStay, signed_attendance,
                                                       p.comfort_level, p.rules.boundary);

  double total = 0.0;
  for (std::size_t i = 0; i < state.users.size(); ++i) {
    auto& user = state.users[i];
    const Action rec = recommendations[i];
    const Quality q = rec == Action::kGo ? go_quality : stay_quality;
    user.trust = update_trust(user.trust, q, p.beta, p.gamma, p.rules.ceiling);
    user.last_recommendation = rec;
    user.last_decision = decisions[i];
    total += user.trust;
  }

  ++state.t;
  return {state.t, attendance, total / static_cast<double>(state.users.size())};
}

StepStats step(SimulationState& state, Rng& rng) {
  const auto recs = issue_recommendations(state.users.size(), state.params.comfort_level, rng);
  std::vector<Action> decisions(state.users.size());
  for (std::size_t i = 0; i < state.users.size(); ++i) {
    decisions[i] = decide(acceptance_probability(state.users[i].trust), recs[i], rng.uniform());
  }
  return resolve_step(state, recs, decisions);
}

bool is_converged(const SimulationState& state) {
  return std::all_of(state.users.begin(), state.users.end(),
                     [](const UserState& u) { return u.trust >= 1.0; });
}

RunResult run(const SimParams& params, Rng& rng) {
  auto state = init_population(params, rng);
  RunResult result;

  bool converged = is_converged(state);
  while (!converged && state.t < params.max_iterations) {
    result.trajectory.push_back(step(state, rng));
    converged = is_converged(state);
  }

  result.converged = converged;
  if (converged) result.t_star = state.t;
  result.final_trusts = state.trusts();
  return result;
}

RunResult run(const SimParams& params) {
  Rng rng(params.seed);
  return run(params, rng);
}

}  // namespace trustsim
