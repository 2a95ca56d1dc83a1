#include "diagperc/sampler.hpp"

#include <string>

namespace diagperc {

namespace {

// SplitMix64 finaliser.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_bits(SamplerKey k, Stream stream, int x, int y) {
  const std::uint64_t coord =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
  std::uint64_t h = mix(k.seed);
  h = mix(h ^ k.replicate);
  h = mix(h ^ static_cast<std::uint64_t>(stream));
  return mix(h ^ coord);
}

SamplerKey derive_key(SamplerKey k, std::uint64_t salt) {
  const std::uint64_t s = mix(mix(k.seed ^ 0x6b657973616c74ULL) ^ k.replicate);
  return {s, mix(s ^ salt)};
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1], got " + std::to_string(p));
}

ColorConfig sample_colors(SamplerKey k, double p, const RectDomain& d) {
  check_probability(p);
  ColorConfig sigma(d.cells_w(), d.cells_h());
  for (int y = 0; y <= d.cells_h(); ++y)
    for (int x = 0; x <= d.cells_w(); ++x) sigma.set({x, y}, sample_color(k, p, {x, y}));
  return sigma;
}

DiagonalConfig sample_diagonals(SamplerKey k, const RectDomain& d) {
  DiagonalConfig omega(d.cells_w(), d.cells_h());
  for (int y = 0; y < d.cells_h(); ++y)
    for (int x = 0; x < d.cells_w(); ++x) omega.set({x, y}, sample_diagonal(k, {x, y}));
  return omega;
}

Configuration sample_configuration(SamplerKey k, double p, const RectDomain& d) {
  return {sample_diagonals(k, d), sample_colors(k, p, d)};
}

}  // namespace diagperc
