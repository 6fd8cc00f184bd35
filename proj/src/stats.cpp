#include "trustsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "trustsim/errors.hpp"

namespace trustsim {

namespace {

std::size_t distinct_x(std::span<const Point> points) {
  std::set<double> xs;
  for (const auto& p : points) xs.insert(p.x);
  return xs.size();
}

// 1 - SS_res/SS_tot. Constant targets have SS_tot == 0: a perfect fit counts
// as R^2 = 1, anything else as -inf.
double r_squared(std::span<const double> observed, std::span<const double> fitted) {
  const double m = mean(observed);
  double ss_res = 0.0;
  double ss_tot = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double r = observed[i] - fitted[i];
    ss_res += r * r;
    ss_tot += (observed[i] - m) * (observed[i] - m);
    scale += observed[i] * observed[i];
  }
  if (ss_tot == 0.0) {
    return ss_res <= 1e-24 * std::max(scale, 1.0) ? 1.0
                                                   : -std::numeric_limits<double>::infinity();
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean of an empty list");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

MeanStddev mean_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw InsufficientDataError("standard deviation needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

double FitResult::evaluate(double x) const {
  if (kind == FitKind::kPowerLaw) return coefficients[0] * std::pow(x, coefficients[1]);
  return (coefficients[0] * x + coefficients[1]) * x + coefficients[2];
}

FitResult power_law_fit(std::span<const Point> points) {
  for (const auto& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0)) {
      throw DomainError("power-law fit needs strictly positive coordinates");
    }
  }
  if (points.size() < 2 || distinct_x(points) < 2) {
    throw RankError("power-law fit needs at least two distinct x values");
  }

  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& p : points) {
    lx.push_back(std::log(p.x));
    ly.push_back(std::log(p.y));
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  std::vector<double> fitted(lx.size());
  for (std::size_t i = 0; i < lx.size(); ++i) fitted[i] = intercept + slope * lx[i];

  return {FitKind::kPowerLaw, {std::exp(intercept), slope}, r_squared(ly, fitted)};
}

FitResult quadratic_fit(std::span<const Point> points) {
  if (distinct_x(points) < 3) throw RankError("quadratic fit needs at least three distinct x values");

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = points[static_cast<std::size_t>(i)].x;
    design(i, 0) = x * x;
    design(i, 1) = x;
    design(i, 2) = 1.0;
    target(i) = points[static_cast<std::size_t>(i)].y;
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < 3) throw RankError("quadratic design matrix is rank deficient");
  const Eigen::Vector3d c = qr.solve(target);

  FitResult fit{FitKind::kQuadratic, {c(0), c(1), c(2)}, 0.0};
  std::vector<double> observed, fitted;
  for (const auto& p : points) {
    observed.push_back(p.y);
    fitted.push_back(fit.evaluate(p.x));
  }
  fit.r_squared = r_squared(observed, fitted);
  return fit;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty list");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

FiveNumberSummary five_number_summary(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("five-number summary of an empty list");
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  return {s.front(), quantile_sorted(s, 0.25), quantile_sorted(s, 0.5), quantile_sorted(s, 0.75),
          s.back()};
}

}  // namespace trustsim
