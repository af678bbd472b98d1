#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lrm {

// Censored first-passage times are stored as +infinity.
inline constexpr double kCensored = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Median with infinities ordered last; the average of the middle pair for even counts.
double median(std::vector<double> values);
double mean(std::span<const double> values);

/// Percentile bootstrap interval for the median. Resampling is driven by a
/// fixed seed, so the interval is reproducible.
Interval bootstrap_median_ci(std::span<const double> values, double level = 0.95,
                             std::size_t resamples = 2000, std::uint64_t seed = 1);
Interval bootstrap_mean_ci(std::span<const double> values, double level = 0.95,
                           std::size_t resamples = 2000, std::uint64_t seed = 1);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rss = 0.0;  // residual sum of squares
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope x. Needs two distinct x values.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Slope of ln(median) against x with a bootstrap interval obtained by
/// resampling the samples inside each group. Groups whose median is censored
/// are rejected.
struct SlopeEstimate {
  LinearFit fit;
  Interval ci;
};
SlopeEstimate log_median_slope(std::span<const double> x, const std::vector<std::vector<double>>& samples,
                               double level = 0.95, std::size_t resamples = 1000, std::uint64_t seed = 1);

}  // namespace lrm
