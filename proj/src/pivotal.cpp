#include "diagperc/pivotal.hpp"

#include <algorithm>
#include <cstdint>

namespace diagperc {

PivotalReport pivotal_sites_reference(const DiagonalConfig& omega, const ColorConfig& sigma,
                                      const EventSpec& event) {
  const RectDomain& d = event.domain();
  if (!omega.matches(d) || !sigma.matches(d)) throw DomainError("pivotal: event not defined on this configuration");
  PivotalReport r;
  r.event = event.describe();
  r.event_occurred = event.evaluate(omega, sigma);
  ColorConfig work = sigma;
  for (std::size_t i = 0; i < d.num_sites(); ++i) {
    const SiteCoord s = d.site_at(i);
    work.toggle(s);
    if (event.evaluate(omega, work) != r.event_occurred) r.pivotal_sites.push_back(s);
    work.toggle(s);
  }
  return r;
}

namespace {

enum ArcBits : std::uint8_t { kLeft = 1, kRight = 2, kTop = 4, kBottom = 8 };

std::uint8_t arc_mask(const RectDomain& d, SiteCoord s) {
  std::uint8_t m = 0;
  if (d.on_left(s)) m |= kLeft;
  if (d.on_right(s)) m |= kRight;
  if (d.on_top(s)) m |= kTop;
  if (d.on_bottom(s)) m |= kBottom;
  return m;
}

std::uint8_t axis_mask(Axis a) { return a == Axis::LeftRight ? (kLeft | kRight) : (kTop | kBottom); }
Axis other(Axis a) { return a == Axis::LeftRight ? Axis::TopBottom : Axis::LeftRight; }

// Arc mask accumulated by each cluster, indexed by label.
std::vector<std::uint8_t> cluster_arcs(const ClusterLabeling& lab) {
  const RectDomain& d = lab.domain();
  std::vector<std::uint8_t> out(d.num_sites(), 0);
  for (std::size_t i = 0; i < d.num_sites(); ++i) {
    const auto id = lab.labels()[i];
    if (id != ClusterLabeling::kNone) out[id] |= arc_mask(d, d.site_at(i));
  }
  return out;
}

}  // namespace

PivotalReport pivotal_sites_crossing(const DiagonalConfig& omega, const ColorConfig& sigma, const EventSpec& event) {
  if (!event.is_full_crossing()) throw DomainError("pivotal_sites_crossing: needs a whole-domain crossing event");
  const RectDomain& d = event.domain();
  if (!omega.matches(d) || !sigma.matches(d)) throw DomainError("pivotal: event not defined on this configuration");

  // The event and its dual complement: red must join red_need, blue must
  // join blue_need.
  const Axis red_axis = event.color() == Color::Red ? event.axis() : other(event.axis());
  const std::uint8_t red_need = axis_mask(red_axis);
  const std::uint8_t blue_need = axis_mask(other(red_axis));

  const ClusterLabeling red = build_clusters(omega, sigma, d, Color::Red);
  const ClusterLabeling blue = build_clusters(omega, sigma, d, Color::Blue);
  const auto red_arcs = cluster_arcs(red);
  const auto blue_arcs = cluster_arcs(blue);

  bool red_crossing = false;
  for (std::size_t i = 0; i < d.num_sites() && !red_crossing; ++i) {
    const auto id = red.labels()[i];
    red_crossing = id != ClusterLabeling::kNone && (red_arcs[id] & red_need) == red_need;
  }

  PivotalReport r;
  r.event = event.describe();
  r.event_occurred = (event.color() == Color::Red) ? red_crossing : !red_crossing;

  for (std::size_t i = 0; i < d.num_sites(); ++i) {
    const SiteCoord s = d.site_at(i);
    const std::uint8_t own = arc_mask(d, s);
    std::uint8_t via_red = own, via_blue = own;
    const bool is_red = sigma.at(s) == Color::Red;
    if (is_red) via_red |= red_arcs[red.id(s)];
    else via_blue |= blue_arcs[blue.id(s)];
    for_each_neighbor(s, d, omega, [&](SiteCoord t) {
      if (is_red && sigma.at(t) == Color::Blue) via_blue |= blue_arcs[blue.id(t)];
      if (!is_red && sigma.at(t) == Color::Red) via_red |= red_arcs[red.id(t)];
    });
    if ((via_red & red_need) == red_need && (via_blue & blue_need) == blue_need) r.pivotal_sites.push_back(s);
  }
  return r;
}

PivotalReport pivotal_sites(const DiagonalConfig& omega, const ColorConfig& sigma, const EventSpec& event) {
  return event.is_full_crossing() ? pivotal_sites_crossing(omega, sigma, event)
                                  : pivotal_sites_reference(omega, sigma, event);
}

namespace {

struct ReplicateOutcome {
  std::uint8_t accepted = 0;
  std::uint32_t pivotal = 0;
};

}  // namespace

ConditionalPivotal conditional_pivotal_mean(const EventSpec& event, double p, std::size_t reps, std::uint64_t seed,
                                            std::size_t cap_factor, Execution ex) {
  check_probability(p);
  if (reps == 0) throw DomainError("conditional_pivotal_mean: reps must be >= 1");
  const RectDomain d = event.domain();
  const std::size_t cap = std::max<std::size_t>(cap_factor, 1) * reps;

  auto run = [&](std::uint64_t replicate) {
    const SamplerKey key{seed, replicate};
    const Configuration cfg = sample_configuration(key, p, d);
    const PivotalReport rep = pivotal_sites(cfg.omega, cfg.sigma, event);
    ReplicateOutcome o;
    o.accepted = rep.event_occurred;
    o.pivotal = static_cast<std::uint32_t>(rep.pivotal_sites.size());
    return o;
  };

  ConditionalPivotal out;
  std::vector<double> counts;
  counts.reserve(reps);
  std::size_t batch = reps;
  while (out.accepted < reps && out.attempted < cap) {
    batch = std::min(batch, cap - out.attempted);
    const auto outcomes = map_replicates<ReplicateOutcome>(ex, out.attempted, batch, run);
    for (const auto& o : outcomes) {
      ++out.attempted;
      if (o.accepted) {
        ++out.accepted;
        counts.push_back(o.pivotal);
        if (out.accepted == reps) break;
      }
    }
    // Size the next batch from the acceptance rate seen so far.
    const std::size_t need = reps - out.accepted;
    const double rate = out.accepted ? static_cast<double>(out.accepted) / static_cast<double>(out.attempted) : 0.0;
    batch = rate > 0 ? static_cast<std::size_t>(static_cast<double>(need) / rate * 1.2) + 16 : 4 * reps;
  }
  if (out.accepted == 0) {
    throw EstimationFailure("conditional_pivotal_mean: no configuration satisfied '" + event.describe() + "' in " +
                                std::to_string(out.attempted) + " attempts at p=" + std::to_string(p),
                            out.attempted);
  }
  out.reached_target = out.accepted == reps;
  out.mean = estimate_from(counts, seed);
  out.mean.accepted = out.accepted;
  out.mean.reps = out.attempted;
  return out;
}

}  // namespace diagperc
