#include "diagperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <stdexcept>

namespace diagperc {

Estimate estimate_from(std::span<const double> samples, std::uint64_t seed) {
  Estimate e;
  e.seed = seed;
  e.reps = e.accepted = samples.size();
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double mean = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  e.value = mean;
  if (samples.size() > 1) {
    const double n = static_cast<double>(samples.size());
    e.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return e;
}

Estimate estimate_from_indicators(std::span<const std::uint8_t> hits, std::uint64_t seed) {
  std::vector<double> v(hits.begin(), hits.end());
  return estimate_from(v, seed);
}

Estimate covariance_estimate(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::uint64_t seed) {
  if (a.size() != b.size()) throw std::invalid_argument("covariance_estimate: length mismatch");
  const std::size_t n = a.size();
  Estimate e;
  e.seed = seed;
  e.reps = e.accepted = n;
  if (n == 0) return e;

  // Sample means of (A and B, A, B) and their covariance matrix.
  double m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    m[0] += a[i] && b[i];
    m[1] += a[i];
    m[2] += b[i];
  }
  for (double& v : m) v /= static_cast<double>(n);
  e.value = m[0] - m[1] * m[2];
  if (n < 2) return e;

  double cov[3][3] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const double x[3] = {(a[i] && b[i]) - m[0], a[i] - m[1], b[i] - m[2]};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) cov[r][c] += x[r] * x[c];
  }
  const double g[3] = {1.0, -m[2], -m[1]};
  double var = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) var += g[r] * g[c] * cov[r][c] / (static_cast<double>(n) - 1.0);
  e.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  return e;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: x values are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace diagperc
