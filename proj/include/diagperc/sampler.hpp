#pragma once

#include <cstdint>

#include "diagperc/lattice.hpp"

namespace diagperc {

struct SamplerKey {
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  friend constexpr bool operator==(SamplerKey, SamplerKey) = default;
};

// Stateless counter-based generator: every random value is a hash of
// (seed, replicate, stream tag, x, y). Reading a coordinate lazily or
// materialising the whole grid gives the same bits.

enum class Stream : std::uint64_t { Color = 0x636f6c6f72ULL, Diagonal = 0x64696167ULL };

/// 64 uniformly mixed bits for (key, stream, x, y).
std::uint64_t counter_bits(SamplerKey k, Stream stream, int x, int y);

/// Uniform in [0, 1) with 53 bits of resolution.
inline double counter_uniform(SamplerKey k, Stream stream, int x, int y) {
  return static_cast<double>(counter_bits(k, stream, x, y) >> 11) * 0x1.0p-53;
}

/// Red iff the site's uniform is below p, so for fixed key the colouring is
/// monotone in p.
inline Color sample_color(SamplerKey k, double p, SiteCoord s) {
  return counter_uniform(k, Stream::Color, s.x, s.y) < p ? Color::Red : Color::Blue;
}

inline Diagonal sample_diagonal(SamplerKey k, CellCoord c) {
  return (counter_bits(k, Stream::Diagonal, c.x, c.y) >> 63) ? Diagonal::NESW : Diagonal::NWSE;
}

/// Independent key for an auxiliary stream (resampling, sub-experiments).
SamplerKey derive_key(SamplerKey k, std::uint64_t salt);

/// Throws DomainError unless 0 <= p <= 1.
void check_probability(double p);

ColorConfig sample_colors(SamplerKey k, double p, const RectDomain& d);
DiagonalConfig sample_diagonals(SamplerKey k, const RectDomain& d);
Configuration sample_configuration(SamplerKey k, double p, const RectDomain& d);

}  // namespace diagperc
