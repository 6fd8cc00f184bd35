#pragma once

#include <span>
#include <vector>

namespace trustsim {

struct MeanStddev {
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation (divisor n - 1)
};

/// Throws DomainError on an empty list.
double mean(std::span<const double> xs);

/// Throws InsufficientDataError with fewer than two values.
MeanStddev mean_stddev(std::span<const double> xs);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class FitKind { kPowerLaw, kQuadratic };

/**
 * Fitted curve.
 *
 * POWER_LAW: coefficients = {a, b} for y = a * x^b.
 * QUADRATIC: coefficients = {c2, c1, c0} for y = c2 x^2 + c1 x + c0.
 */
struct FitResult {
  FitKind kind = FitKind::kPowerLaw;
  std::vector<double> coefficients;
  double r_squared = 0.0;

  double evaluate(double x) const;
};

/**
 * Ordinary least squares of ln y on ln x.
 *
 * R^2 is reported for the linearized regression (the usual spreadsheet
 * trendline convention). Needs two or more points with distinct x; throws
 * DomainError for non-positive coordinates and RankError for a single
 * distinct x.
 */
FitResult power_law_fit(std::span<const Point> points);

/// Least-squares parabola; R^2 = 1 - SS_res / SS_tot in the original space.
/// Throws RankError with fewer than three distinct x.
FitResult quadratic_fit(std::span<const Point> points);

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Quantile of sorted data by linear interpolation at h = (n - 1) p.
double quantile_sorted(std::span<const double> sorted, double p);

/// Throws DomainError on an empty list.
FiveNumberSummary five_number_summary(std::span<const double> xs);

}  // namespace trustsim
