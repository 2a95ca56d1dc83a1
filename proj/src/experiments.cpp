#include "diagperc/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "diagperc/exploration.hpp"
#include "diagperc/oracle.hpp"
#include "diagperc/pivotal.hpp"
#include "diagperc/sampler.hpp"

namespace diagperc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::NotApplicable: return "N/A";
  }
  return "?";
}

std::string to_string(FkgPair f) {
  switch (f) {
    case FkgPair::StripOverlap: return "strip-overlap";
    case FkgPair::Identical: return "identical";
    case FkgPair::Duality: return "duality";
  }
  return "?";
}

std::vector<std::uint8_t> crossing_indicators(const RectDomain& d, double p, Color c, Axis a, std::size_t reps,
                                              std::uint64_t seed, CrossingMethod method, Execution ex) {
  check_probability(p);
  if (method == CrossingMethod::Exploration) {
    const bool red_lr = c == Color::Red && a == Axis::LeftRight;
    const bool blue_tb = c == Color::Blue && a == Axis::TopBottom;
    if (!red_lr && !blue_tb) {
      throw DomainError("exploration decides only red left-right and blue top-bottom crossings");
    }
    const ExitSide want = red_lr ? ExitSide::Right : ExitSide::Bottom;
    return map_replicates<std::uint8_t>(ex, 0, reps, [&](std::uint64_t r) -> std::uint8_t {
      LazySource src(d, {seed, r}, p);
      return explore(d, src).exit_side == want;
    });
  }
  return map_replicates<std::uint8_t>(ex, 0, reps, [&](std::uint64_t r) -> std::uint8_t {
    const Configuration cfg = sample_configuration({seed, r}, p, d);
    return has_crossing(cfg.omega, cfg.sigma, d, c, a);
  });
}

Estimate crossing_experiment(const RectDomain& d, double p, Color c, Axis a, std::size_t reps, std::uint64_t seed,
                             CrossingMethod method, Execution ex) {
  if (reps == 0) throw DomainError("crossing_experiment: reps must be >= 1");
  const auto hits = crossing_indicators(d, p, c, a, reps, seed, method, ex);
  return estimate_from_indicators(hits, seed);
}

std::vector<SweepRow> sweep(const std::vector<double>& ps, const std::vector<int>& ns, int aspect, Color c, Axis a,
                            std::size_t reps, std::uint64_t seed, Execution ex) {
  if (aspect < 1) throw DomainError("sweep: aspect must be >= 1");
  std::vector<SweepRow> rows;
  for (double p : ps) {
    for (int n : ns) {
      const RectDomain d(aspect * n, n);
      rows.push_back({p, n, aspect, crossing_experiment(d, p, c, a, reps, seed, CrossingMethod::Clusters, ex)});
    }
  }
  return rows;
}

namespace {

Verdict bound_verdict(const std::vector<BoundRow>& rows, double threshold) {
  if (rows.empty()) return Verdict::NotApplicable;
  bool all_above = true, some_below = false;
  for (const auto& r : rows) {
    all_above = all_above && r.lower > threshold;
    some_below = some_below || r.upper < threshold;
  }
  if (all_above) return Verdict::Pass;
  return some_below ? Verdict::Fail : Verdict::Inconclusive;
}

BoundRow bound_row(int n, const Estimate& e) {
  return {n, e, e.lower(kZ99OneSided), e.upper(kZ99OneSided)};
}

}  // namespace

BoundReport rsw_check(const std::vector<int>& ns, std::size_t reps, std::uint64_t seed, int aspect, double p,
                      std::optional<double> threshold, Execution ex) {
  BoundReport out;
  out.quantity = "red left-right crossing";
  out.aspect = aspect;
  out.p = p;
  out.threshold = threshold.value_or(aspect == 2 ? 1.0 / 16.0 : 0.0);
  for (int n : ns) {
    if (n < 1) throw DomainError("rsw_check: n must be >= 1");
    const RectDomain d(aspect * n, n);
    out.rows.push_back(bound_row(n, crossing_experiment(d, p, Color::Red, Axis::LeftRight, reps, seed,
                                                        CrossingMethod::Clusters, ex)));
  }
  out.verdict = bound_verdict(out.rows, out.threshold);
  return out;
}

BoundReport annulus_check(const std::vector<int>& ns, std::size_t reps, std::uint64_t seed, double p, double delta0,
                          Execution ex) {
  check_probability(p);
  BoundReport out;
  out.quantity = "red circuit in 4n/6n annulus";
  out.aspect = 1;
  out.p = p;
  out.threshold = delta0;
  for (int n : ns) {
    const Annulus ann = centered_annulus(n);
    const RectDomain d(ann.outer_side(), ann.outer_side());
    const auto hits = map_replicates<std::uint8_t>(ex, 0, reps, [&](std::uint64_t r) -> std::uint8_t {
      const Configuration cfg = sample_configuration({seed, r}, p, d);
      return has_circuit(cfg.omega, cfg.sigma, ann, Color::Red);
    });
    out.rows.push_back(bound_row(n, estimate_from_indicators(hits, seed)));
  }
  out.verdict = bound_verdict(out.rows, out.threshold);
  return out;
}

PivotalScalingReport pivotal_scaling(const std::vector<int>& ns, double p, std::size_t reps, std::uint64_t seed,
                                     std::size_t cap_factor, Execution ex) {
  PivotalScalingReport out;
  out.p = p;
  for (int n : ns) {
    const RectDomain d(2 * n, n);
    const EventSpec blue_tb = EventSpec::crossing(d, Color::Blue, Axis::TopBottom);
    const ConditionalPivotal c = conditional_pivotal_mean(blue_tb, p, reps, seed, cap_factor, ex);
    out.rows.push_back({n, c.mean, c.attempted, c.accepted,
                        static_cast<double>(c.accepted) / static_cast<double>(c.attempted), c.reached_target});
  }
  if (out.rows.size() < 2) return out;

  std::vector<double> x, y;
  for (const auto& r : out.rows) {
    x.push_back(std::log2(static_cast<double>(r.n)));
    y.push_back(r.mean.value);
  }
  out.beta_hat = least_squares(x, y).slope;
  out.strictly_increasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    out.strictly_increasing = out.strictly_increasing && out.rows[i].mean.value > out.rows[i - 1].mean.value;
  out.verdict = out.strictly_increasing && *out.beta_hat > 0 ? Verdict::Pass : Verdict::Fail;
  return out;
}

DecayReport decay_check(double epsilon, const std::vector<int>& ks, std::size_t reps, std::uint64_t seed,
                        bool mirrored, Execution ex) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw DomainError("decay_check: epsilon must lie in [0, 1/2]");
  DecayReport out;
  out.p = mirrored ? 0.5 - epsilon : 0.5 + epsilon;
  const Color c = mirrored ? Color::Red : Color::Blue;
  const Axis a = mirrored ? Axis::LeftRight : Axis::TopBottom;
  // The mirrored event is the colour-swapped quarter turn of the plain one.
  out.event = to_string(c) + " " + to_string(a) + (mirrored ? " crossing of 2^k x 2^(k+1) cells" : " crossing of 2^(k+1) x 2^k cells");
  for (int k : ks) {
    if (k < 0 || k > 13) throw DomainError("decay_check: k must lie in [0, 13]");
    const RectDomain d = mirrored ? RectDomain(1 << k, 1 << (k + 1)) : RectDomain(1 << (k + 1), 1 << k);
    out.rows.push_back({k, crossing_experiment(d, out.p, c, a, reps, seed, CrossingMethod::Clusters, ex)});
  }
  const bool all_zero =
      std::all_of(out.rows.begin(), out.rows.end(), [](const DecayRow& r) { return r.estimate.value == 0.0; });
  if (epsilon == 0.0 || out.rows.size() < 2 || all_zero) return out;
  bool decreasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    decreasing = decreasing && out.rows[i].estimate.value < out.rows[i - 1].estimate.value;
  out.verdict = decreasing ? Verdict::Pass : Verdict::Fail;
  return out;
}

Estimate PcEstimate::as_estimate() const {
  Estimate e;
  e.value = value;
  e.std_error = (high - low) / 2.0;
  if (!probes.empty()) {
    e.reps = e.accepted = probes.front().estimate.reps;
    e.seed = probes.front().estimate.seed;
  }
  return e;
}

PcEstimate pc_estimate(int n, std::size_t reps, double tolerance, std::uint64_t seed, double low, double high,
                       Execution ex) {
  if (n < 1) throw DomainError("pc_estimate: n must be >= 1");
  if (!(tolerance > 0.0)) throw DomainError("pc_estimate: tolerance must be positive");
  if (!(low < high)) throw DomainError("pc_estimate: need low < high");
  const RectDomain d(n, n);
  PcEstimate out;
  auto probe = [&](double p) {
    const Estimate e = crossing_experiment(d, p, Color::Red, Axis::LeftRight, reps, seed, CrossingMethod::Clusters, ex);
    out.probes.push_back({p, e});
    return e.value;
  };
  const double f_low = probe(low);
  const double f_high = probe(high);
  if (!(f_low < 0.5 && f_high > 0.5)) {
    throw EstimationFailure("pc_estimate: [" + std::to_string(low) + ", " + std::to_string(high) +
                                "] does not bracket crossing probability 1/2 (estimates " + std::to_string(f_low) +
                                ", " + std::to_string(f_high) + ")",
                            out.probes.size());
  }
  while (high - low > tolerance) {
    const double mid = 0.5 * (low + high);
    if (probe(mid) < 0.5) low = mid;
    else high = mid;
  }
  out.low = low;
  out.high = high;
  out.value = 0.5 * (low + high);
  return out;
}

EventPair fkg_pair(FkgPair which, int n) {
  if (n < 1) throw DomainError("fkg_pair: n must be >= 1");
  switch (which) {
    case FkgPair::StripOverlap: {
      const RectDomain d(3 * n, n);
      return {EventSpec::crossing(d, Color::Red, Axis::LeftRight, Window{{0, 0}, 2 * n, n}),
              EventSpec::crossing(d, Color::Red, Axis::LeftRight, Window{{n, 0}, 2 * n, n})};
    }
    case FkgPair::Identical: {
      const RectDomain d(2 * n, n);
      const auto e = EventSpec::crossing(d, Color::Red, Axis::LeftRight);
      return {e, e};
    }
    case FkgPair::Duality: {
      const RectDomain d(2 * n, n);
      return {EventSpec::crossing(d, Color::Red, Axis::LeftRight), EventSpec::crossing(d, Color::Blue, Axis::TopBottom)};
    }
  }
  throw DomainError("fkg_pair: unknown pair");
}

std::vector<EventPair> fkg_catalogue() {
  const RectDomain one(1, 1), wide(2, 1), two(2, 2);
  auto cross = [](RectDomain d, Color c, Axis a) { return EventSpec::crossing(d, c, a); };
  auto red_lr = [&](RectDomain d) { return cross(d, Color::Red, Axis::LeftRight); };
  auto red_tb = [&](RectDomain d) { return cross(d, Color::Red, Axis::TopBottom); };
  auto link = [&](std::vector<SiteCoord> a, std::vector<SiteCoord> b, Window w) {
    return EventSpec::connection(two, std::move(a), std::move(b), Color::Red, w);
  };
  const Window all = Window::whole(two);
  const Window left{{0, 0}, 1, 2}, right{{1, 0}, 1, 2}, bottom{{0, 0}, 2, 1}, top{{0, 1}, 2, 1};
  return {
      {red_lr(one), red_tb(one)},
      {red_lr(wide), red_tb(wide)},
      {red_lr(two), red_tb(two)},
      {red_lr(two), red_lr(two)},
      {EventSpec::crossing(two, Color::Red, Axis::LeftRight, bottom),
       EventSpec::crossing(two, Color::Red, Axis::LeftRight, top)},
      {EventSpec::crossing(two, Color::Red, Axis::TopBottom, left),
       EventSpec::crossing(two, Color::Red, Axis::TopBottom, right)},
      {link({{0, 0}}, {{2, 2}}, all), link({{0, 2}}, {{2, 0}}, all)},
      {link({{0, 0}}, {{1, 1}}, Window{{0, 0}, 1, 1}), red_lr(two)},
      {EventSpec::negation(cross(two, Color::Blue, Axis::TopBottom)), red_tb(two)},
      {EventSpec::disjunction(red_lr(two), red_tb(two)), EventSpec::conjunction(red_lr(two), red_tb(two))},
      {EventSpec::constant(two, true), red_lr(two)},
      {link({{1, 1}}, {{0, 0}, {0, 1}, {0, 2}}, all), link({{1, 1}}, {{2, 0}, {2, 1}, {2, 2}}, all)},
  };
}

EventPair diagonal_paths_pair() {
  const RectDomain d(3, 3);
  return {EventSpec::fixed_path(d, {{0, 3}, {1, 2}, {2, 1}, {3, 0}}, Color::Red),
          EventSpec::fixed_path(d, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, Color::Red)};
}

FkgReport fkg_mc_check(FkgPair which, int n, double p, std::size_t reps, std::uint64_t seed, Execution ex) {
  check_probability(p);
  {
    // Hypotheses are checked exactly on the n = 1 version of the pair.
    const EventPair small = fkg_pair(which, 1);
    (void)verify_fkg(small.first, small.second, Probability(p));
  }
  const EventPair pair = fkg_pair(which, n);
  const RectDomain d = pair.first.domain();
  struct Hit {
    std::uint8_t a = 0, b = 0;
  };
  const auto hits = map_replicates<Hit>(ex, 0, reps, [&](std::uint64_t r) {
    const Configuration cfg = sample_configuration({seed, r}, p, d);
    return Hit{pair.first.evaluate(cfg.omega, cfg.sigma), pair.second.evaluate(cfg.omega, cfg.sigma)};
  });
  std::vector<std::uint8_t> a(reps), b(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    a[i] = hits[i].a;
    b[i] = hits[i].b;
  }
  FkgReport out;
  out.first = pair.first.describe();
  out.second = pair.second.describe();
  out.margin = covariance_estimate(a, b, seed);
  out.verdict = out.margin.value > -2.0 * out.margin.std_error ? Verdict::Pass : Verdict::Fail;
  return out;
}

DualityReport duality_mass_check(const std::vector<RectDomain>& sizes, std::size_t reps_per_size, std::uint64_t seed,
                                 double p, Adjacency adj, Execution ex) {
  check_probability(p);
  DualityReport out;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const RectDomain d = sizes[si];
    // Each size draws from its own replicate range so sizes are independent.
    const std::uint64_t first = static_cast<std::uint64_t>(si) << 40;
    const auto ok = map_replicates<std::uint8_t>(ex, first, reps_per_size, [&](std::uint64_t r) -> std::uint8_t {
      const Configuration cfg = sample_configuration({seed, r}, p, d);
      return check_duality(cfg.omega, cfg.sigma, d, adj);
    });
    DualityRow row{d, reps_per_size, 0};
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (ok[i]) continue;
      ++row.violations;
      if (!out.counterexample) {
        const Configuration cfg = sample_configuration({seed, first + i}, p, d);
        out.counterexample = dump_config(cfg.omega, cfg.sigma);
      }
    }
    out.rows.push_back(row);
  }
  const bool clean =
      std::all_of(out.rows.begin(), out.rows.end(), [](const DualityRow& r) { return r.violations == 0; });
  out.verdict = clean ? Verdict::Pass : Verdict::Fail;
  return out;
}

CouplingReport exploration_coupling_check(const RectDomain& d, double p, std::size_t reps, std::uint64_t seed,
                                          std::size_t measurability_instances, int resamples, Execution ex) {
  CouplingReport out;
  out.reps = reps;
  const auto mismatch = map_replicates<std::uint8_t>(ex, 0, reps, [&](std::uint64_t r) -> std::uint8_t {
    const SamplerKey key{seed, r};
    LazySource src(d, key, p);
    const bool right = explore(d, src).exit_side == ExitSide::Right;
    const Configuration cfg = sample_configuration(key, p, d);
    return right != has_crossing(cfg.omega, cfg.sigma, d, Color::Red, Axis::LeftRight);
  });
  for (auto m : mismatch) out.mismatches += m;

  out.measurability_instances = std::min(measurability_instances, reps);
  const auto fails =
      map_replicates<std::uint8_t>(ex, 0, out.measurability_instances, [&](std::uint64_t r) -> std::uint8_t {
        const SamplerKey key{seed, r};
        const ExplorationResult run = explore(d, key, p);
        return !exploration_measurability_check(d, run, key, p, resamples);
      });
  for (auto f : fails) out.measurability_failures += f;
  return out;
}

}  // namespace diagperc
