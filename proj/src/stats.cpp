#include "lrm/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lrm/errors.hpp"
#include "lrm/rng.hpp"

namespace lrm {

namespace {

double sorted_median(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  const double a = v[n / 2 - 1], b = v[n / 2];
  if (std::isinf(b)) return b;
  return 0.5 * (a + b);
}

double quantile(std::vector<double>& v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, v.size() - 1);
  if (std::isinf(v[j]) || std::isinf(v[i])) return v[j] == v[i] ? v[i] : (pos - i > 0 ? v[j] : v[i]);
  return v[i] + (pos - static_cast<double>(i)) * (v[j] - v[i]);
}

template <class Stat>
Interval bootstrap(std::span<const double> values, double level, std::size_t resamples, std::uint64_t seed,
                   Stat stat) {
  if (values.empty()) throw ValidationError("bootstrap needs at least one value");
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("confidence level must lie in (0, 1)");
  if (resamples == 0) throw ValidationError("bootstrap needs resamples");
  Rng rng(seed);
  std::vector<double> draws(resamples), sample(values.size());
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& s : sample) s = values[uniform_index(rng, values.size())];
    draws[b] = stat(sample);
  }
  const double tail = 0.5 * (1.0 - level);
  Interval ci;
  ci.lo = quantile(draws, tail);
  ci.hi = quantile(draws, 1.0 - tail);
  return ci;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty sample");
  std::sort(values.begin(), values.end());
  return sorted_median(values);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw ValidationError("mean of an empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

Interval bootstrap_median_ci(std::span<const double> values, double level, std::size_t resamples,
                             std::uint64_t seed) {
  return bootstrap(values, level, resamples, seed, [](std::vector<double> s) { return median(std::move(s)); });
}

Interval bootstrap_mean_ci(std::span<const double> values, double level, std::size_t resamples,
                           std::uint64_t seed) {
  return bootstrap(values, level, resamples, seed, [](const std::vector<double>& s) { return mean(s); });
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("x and y sizes differ");
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("least squares needs two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("least squares needs distinct x values");
  LinearFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    f.rss += r * r;
  }
  f.slope_stderr = n > 2 ? std::sqrt(f.rss / static_cast<double>(n - 2) / sxx) : 0.0;
  return f;
}

SlopeEstimate log_median_slope(std::span<const double> x, const std::vector<std::vector<double>>& samples,
                               double level, std::size_t resamples, std::uint64_t seed) {
  if (x.size() != samples.size()) throw ValidationError("one sample group per x value");
  const std::size_t k = x.size();
  std::vector<double> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (samples[i].empty()) throw ValidationError("empty sample group");
    const double m = median(samples[i]);
    if (std::isinf(m)) throw ValidationError("censored median cannot enter a fit");
    y[i] = std::log(m);
  }
  SlopeEstimate out;
  out.fit = least_squares(x, y);

  Rng rng(seed);
  std::vector<double> slopes;
  slopes.reserve(resamples);
  std::vector<double> draw;
  for (std::size_t b = 0; b < resamples; ++b) {
    bool finite = true;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& s = samples[i];
      draw.resize(s.size());
      for (auto& d : draw) d = s[uniform_index(rng, s.size())];
      const double m = median(draw);
      if (std::isinf(m)) finite = false;
      y[i] = std::log(m);
    }
    if (finite) slopes.push_back(least_squares(x, y).slope);
  }
  if (slopes.empty()) {
    out.ci = {out.fit.slope, out.fit.slope};
    return out;
  }
  const double tail = 0.5 * (1.0 - level);
  out.ci.lo = quantile(slopes, tail);
  out.ci.hi = quantile(slopes, 1.0 - tail);
  return out;
}

}  // namespace lrm
