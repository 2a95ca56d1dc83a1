#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace diagperc {

/// Monte Carlo result. std_error is the sample standard deviation (n-1
/// denominator) divided by sqrt(reps).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
  std::size_t accepted = 0;  // conditional estimates only; equals reps otherwise
  std::uint64_t seed = 0;

  double lower(double z) const { return value - z * std_error; }
  double upper(double z) const { return value + z * std_error; }
};

/// One-sided 99% standard normal quantile.
inline constexpr double kZ99OneSided = 2.3263478740408408;

/// Mean and standard error folded in index order.
Estimate estimate_from(std::span<const double> samples, std::uint64_t seed);
Estimate estimate_from_indicators(std::span<const std::uint8_t> hits, std::uint64_t seed);

/// Estimate of P(A and B) - P(A)P(B) from paired indicators, with a
/// delta-method standard error.
Estimate covariance_estimate(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::uint64_t seed);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace diagperc
