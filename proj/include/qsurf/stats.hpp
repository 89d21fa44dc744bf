#pragma once

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qsurf/error.hpp"

namespace qsurf::stats {

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

// Pearson test of observed counts against expected counts.
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2) throw Error(Errc::InsufficientData, "chi-square needs two cells");
  ChiSquare r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double d = observed[i] - expected[i];
    r.statistic += d * d / expected[i];
  }
  r.dof = static_cast<int>(observed.size()) - 1;
  r.p_value = boost::math::gamma_q(r.dof / 2.0, r.statistic / 2.0);
  return r;
}

inline ChiSquare chi_square_uniform(const std::vector<double>& observed) {
  double tot = std::accumulate(observed.begin(), observed.end(), 0.0);
  return chi_square(observed, std::vector<double>(observed.size(), tot / observed.size()));
}

inline double mean(const std::vector<double>& x) {
  if (x.empty()) throw Error(Errc::InsufficientData, "mean of nothing");
  return std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

inline double variance(const std::vector<double>& x) {
  if (x.size() < 2) throw Error(Errc::InsufficientData, "variance needs two values");
  double m = mean(x), s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / (x.size() - 1);
}

inline double quantile(std::vector<double> x, double q) {
  if (x.empty()) throw Error(Errc::InsufficientData, "quantile of nothing");
  std::sort(x.begin(), x.end());
  double pos = q * (x.size() - 1);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= x.size()) return x.back();
  return x[i] + (pos - i) * (x[i + 1] - x[i]);
}

struct Fit {
  double slope = 0, intercept = 0, r2 = 0, slope_se = 0;
};

inline Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(Errc::InsufficientData, "fit needs two points");
  double mx = mean(x), my = mean(y), sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1;
  double rss = std::max(0.0, syy - f.slope * sxy);
  f.slope_se = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0;
  return f;
}

struct Interval {
  double lo = 0, hi = 0;
};

// Percentile bootstrap interval for a statistic of one sample.
template <class Stat>
Interval bootstrap(const std::vector<double>& x, Stat stat, int reps, double level, std::mt19937_64& rng) {
  if (x.empty()) throw Error(Errc::InsufficientData, "bootstrap of nothing");
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  std::vector<double> vals, buf(x.size());
  for (int r = 0; r < reps; ++r) {
    for (auto& v : buf) v = x[pick(rng)];
    vals.push_back(stat(buf));
  }
  return {quantile(vals, (1 - level) / 2), quantile(vals, (1 + level) / 2)};
}

}  // namespace qsurf::stats
