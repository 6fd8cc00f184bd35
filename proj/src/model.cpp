#include "trustsim/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "trustsim/errors.hpp"

namespace trustsim {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::string to_string(Rules rules) {
  if (rules == Rules::literal()) return "literal";
  if (rules == Rules::replication()) return "replication";
  std::string out = "boundary=";
  out += rules.boundary == ComfortBoundary::kStrict ? "strict" : "shared";
  out += ",ceiling=";
  out += rules.ceiling == TrustCeiling::kClamped ? "clamped" : "unbounded";
  return out;
}

Rules parse_rules(const std::string& name) {
  if (name == "literal") return Rules::literal();
  if (name == "replication") return Rules::replication();
  throw ConfigError("unknown rule set '" + name + "' (expected literal|replication)");
}

std::string to_string(const InitialTrust& policy) {
  if (policy.kind == InitialTrust::Kind::kUniform) return "uniform";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, policy.value);
  return "constant:" + std::string(buf, end);
}

InitialTrust parse_initial_trust(const std::string& text) {
  if (text == "uniform") return InitialTrust::uniform();
  constexpr std::string_view prefix = "constant:";
  if (text.starts_with(prefix)) {
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw ConfigError("bad initial trust value in '" + text + "'");
    }
    if (!in_unit_interval(v)) {
      throw ConfigError("initial trust constant must lie in [0,1], got '" + text + "'");
    }
    return InitialTrust::constant(v);
  }
  throw ConfigError("unknown initial trust policy '" + text +
                    "' (expected uniform|constant:<v>)");
}

void SimParams::validate() const {
  if (n_users == 0) throw ConfigError("n_users must be positive");
  if (comfort_level >= n_users) {
    throw ConfigError("comfort level must be smaller than the number of users");
  }
  if (capacity && *capacity < comfort_level) {
    throw ConfigError("capacity must be at least the comfort level");
  }
  if (capacity && *capacity == 0) throw ConfigError("capacity must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in (0,1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0,1]");
  if (initial_trust.kind == InitialTrust::Kind::kConstant &&
      !in_unit_interval(initial_trust.value)) {
    throw ConfigError("initial trust constant must lie in [0,1]");
  }
}

Action decide(double trust, Action rec, double draw) {
  if (!in_unit_interval(trust)) throw DomainError("trust outside [0,1]");
  if (!(draw >= 0.0 && draw < 1.0)) throw DomainError("draw outside [0,1)");
  return draw < trust ? rec : opposite(rec);
}

Quality classify_recommendation(Action rec, std::int64_t attendance,
                                std::size_t comfort_level, ComfortBoundary boundary) {
  if (attendance < 0) throw DomainError("attendance must be non-negative");
  const auto level = static_cast<std::int64_t>(comfort_level);
  bool good = false;
  if (rec == Action::kGo) {
    good = attendance <= level;
  } else {
    good = boundary == ComfortBoundary::kShared ? attendance >= level : attendance > level;
  }
  return good ? Quality::kGood : Quality::kBad;
}

double update_trust(double trust, Quality q, double beta, double gamma,
                    TrustCeiling ceiling) {
  if (!(trust >= 0.0) || !std::isfinite(trust)) throw DomainError("trust must be >= 0");
  if (ceiling == TrustCeiling::kClamped && trust > 1.0) {
    throw DomainError("trust above 1 under a clamped ceiling");
  }
  if (!(beta >= 0.0) || !(gamma >= 0.0) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw DomainError("feedback parameters must be finite and non-negative");
  }
  if (q == Quality::kBad) return std::max(0.0, trust - gamma);
  const double raised = trust + beta;
  return ceiling == TrustCeiling::kClamped ? std::min(1.0, raised) : raised;
}

std::vector<Action> issue_recommendations(std::size_t n_users, std::size_t comfort_level,
                                          Rng& rng) {
  if (comfort_level > n_users) throw DomainError("comfort level exceeds number of users");
  std::vector<Action> recs(n_users, Action::kStay);
  std::vector<std::size_t> order(n_users);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first comfort_level slots become a uniform subset.
  for (std::size_t k = 0; k < comfort_level; ++k) {
    const auto j = k + static_cast<std::size_t>(rng.below(n_users - k));
    std::swap(order[k], order[j]);
    recs[order[k]] = Action::kGo;
  }
  return recs;
}

std::size_t compute_attendance(std::span<const Action> decisions) {
  return static_cast<std::size_t>(std::count(decisions.begin(), decisions.end(), Action::kGo));
}

double average_trust(std::span<const double> trusts) {
  if (trusts.empty()) throw DomainError("average of an empty trust list");
  return std::accumulate(trusts.begin(), trusts.end(), 0.0) /
         static_cast<double>(trusts.size());
}

}  // namespace trustsim
