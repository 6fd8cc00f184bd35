#pragma once

// Types and single-step rules of the user/recommender trust model. Everything
// here is a pure function of its arguments; randomness is injected either as
// an explicit draw or through an Rng reference owned by the caller.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trustsim/rng.hpp"

namespace trustsim {

enum class Action : std::uint8_t { kGo, kStay };

enum class Quality : std::uint8_t { kGood, kBad };

/// Who is judged GOOD when attendance equals the comfort level exactly.
enum class ComfortBoundary : std::uint8_t {
  /// Only GO recommendations are good; STAY needs attendance > comfort level.
  kStrict,
  /// Both GO and STAY recommendations are good at attendance == comfort level.
  kShared,
};

enum class TrustCeiling : std::uint8_t {
  /// Trust is clamped to [0, 1].
  kClamped,
  /// Trust may grow past 1; acceptance probability saturates at 1.
  kUnbounded,
};

/**
 * The two rule choices the model text leaves open at the edges.
 *
 * `literal()` applies the trust revision protocol exactly as stated: strict
 * boundary and trust kept in [0, 1]. Under it the GO and STAY groups always
 * receive opposite qualities, so once a step has run the all-ones state can
 * never be observed (for 0 < L < N).
 *
 * `replication()` is the rule set that reproduces the published convergence
 * tables: at O == L nobody is penalized and trust is not capped at 1. The
 * all-trusting state then becomes absorbing and convergence is reachable.
 */
struct Rules {
  ComfortBoundary boundary = ComfortBoundary::kStrict;
  TrustCeiling ceiling = TrustCeiling::kClamped;

  static constexpr Rules literal() { return {}; }
  static constexpr Rules replication() {
    return {ComfortBoundary::kShared, TrustCeiling::kUnbounded};
  }

  friend constexpr bool operator==(Rules, Rules) = default;
};

/// "literal", "replication" or "boundary=...,ceiling=..." for other mixes.
std::string to_string(Rules rules);
/// Accepts "literal" or "replication"; throws ConfigError otherwise.
Rules parse_rules(const std::string& name);

/// How each user's trust is drawn at t = 0.
struct InitialTrust {
  enum class Kind : std::uint8_t { kUniform, kConstant };

  Kind kind = Kind::kUniform;
  double value = 0.0;  // only meaningful for kConstant

  static constexpr InitialTrust uniform() { return {}; }
  static constexpr InitialTrust constant(double v) { return {Kind::kConstant, v}; }

  friend constexpr bool operator==(const InitialTrust&, const InitialTrust&) = default;
};

/// "uniform" or "constant:<v>", the same spelling the CLI accepts.
std::string to_string(const InitialTrust& policy);
InitialTrust parse_initial_trust(const std::string& text);

struct SimParams {
  std::size_t n_users = 100;
  std::size_t comfort_level = 60;
  /// Resource capacity. Carried for reporting only; no rule reads it.
  std::optional<std::size_t> capacity;
  double beta = 0.05;
  double gamma = 0.05;
  std::size_t max_iterations = 250;
  InitialTrust initial_trust = InitialTrust::uniform();
  std::uint64_t seed = 0;
  Rules rules = Rules::literal();

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// gamma = phi * beta.
inline double gamma_from_phi(double phi, double beta) { return phi * beta; }

struct UserState {
  double trust = 0.0;
  std::optional<Action> last_recommendation;
  std::optional<Action> last_decision;
};

constexpr Action opposite(Action a) {
  return a == Action::kGo ? Action::kStay : Action::kGo;
}

/// Probability that a user with the given trust follows a recommendation.
constexpr double acceptance_probability(double trust) {
  return trust < 1.0 ? trust : 1.0;
}

/**
 * Bernoulli acceptance of a recommendation.
 *
 * Returns `rec` when `draw < trust`, otherwise its opposite, so the
 * acceptance probability is exactly `trust`. trust must lie in [0, 1] and
 * draw in [0, 1); anything else throws DomainError.
 */
Action decide(double trust, Action rec, double draw);

/// GOOD iff (GO and attendance <= L) or (STAY and attendance > L), with the
/// attendance == L case for STAY governed by `boundary`.
Quality classify_recommendation(Action rec, std::int64_t attendance,
                                std::size_t comfort_level,
                                ComfortBoundary boundary = ComfortBoundary::kStrict);

/// GOOD adds beta, BAD subtracts gamma; the result never drops below 0 and,
/// with a clamped ceiling, never exceeds 1.
double update_trust(double trust, Quality q, double beta, double gamma,
                    TrustCeiling ceiling = TrustCeiling::kClamped);

/// Sends GO to a uniformly chosen subset of exactly `comfort_level` users and
/// STAY to everyone else. Consumes `comfort_level` bounded draws from `rng`.
std::vector<Action> issue_recommendations(std::size_t n_users, std::size_t comfort_level,
                                          Rng& rng);

std::size_t compute_attendance(std::span<const Action> decisions);

/// Arithmetic mean; throws DomainError on an empty list.
double average_trust(std::span<const double> trusts);

}  // namespace trustsim
