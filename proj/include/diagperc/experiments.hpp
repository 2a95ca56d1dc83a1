#pragma once

// Monte Carlo experiments behind the command-line tool. Every experiment is a
// pure function of its parameters and seed: replicate r of a run uses the
// sampler key (seed, r) and results are folded in replicate order, so the
// output is the same for any worker count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagperc/connectivity.hpp"
#include "diagperc/event.hpp"
#include "diagperc/replicates.hpp"
#include "diagperc/stats.hpp"

namespace diagperc {

enum class Verdict { Pass, Fail, Inconclusive, NotApplicable };
std::string to_string(Verdict v);

enum class CrossingMethod { Clusters, Exploration };

/// Per-replicate crossing indicators for replicates [0, reps).
std::vector<std::uint8_t> crossing_indicators(const RectDomain& d, double p, Color c, Axis a, std::size_t reps,
                                              std::uint64_t seed, CrossingMethod method = CrossingMethod::Clusters,
                                              Execution ex = Execution::Parallel);

Estimate crossing_experiment(const RectDomain& d, double p, Color c, Axis a, std::size_t reps, std::uint64_t seed,
                             CrossingMethod method = CrossingMethod::Clusters, Execution ex = Execution::Parallel);

struct SweepRow {
  double p = 0.0;
  int n = 0;       // cells on the short side
  int aspect = 1;  // long side = aspect * n
  Estimate estimate;
};

/// Crossing of aspect*n x n cells for every (p, n) pair, rows ordered by p then n.
std::vector<SweepRow> sweep(const std::vector<double>& ps, const std::vector<int>& ns, int aspect, Color c, Axis a,
                            std::size_t reps, std::uint64_t seed, Execution ex = Execution::Parallel);

struct BoundRow {
  int n = 0;
  Estimate estimate;
  double lower = 0.0;  // one-sided 99%
  double upper = 0.0;
};

/// Rows compared against a threshold: Pass if every lower bound exceeds it,
/// Fail if some upper bound is below it, Inconclusive otherwise.
struct BoundReport {
  std::string quantity;
  int aspect = 2;
  double p = 0.5;
  double threshold = 0.0;
  std::vector<BoundRow> rows;
  Verdict verdict = Verdict::NotApplicable;
};

/// Long-way red crossing of aspect*n x n cells. Threshold defaults to 1/16
/// for aspect 2 and 0 otherwise.
BoundReport rsw_check(const std::vector<int>& ns, std::size_t reps, std::uint64_t seed, int aspect = 2,
                      double p = 0.5, std::optional<double> threshold = std::nullopt,
                      Execution ex = Execution::Parallel);

/// Red circuit in the annulus between the 4n and 6n co-centred squares.
BoundReport annulus_check(const std::vector<int>& ns, std::size_t reps, std::uint64_t seed, double p = 0.5,
                          double delta0 = 0.01, Execution ex = Execution::Parallel);

struct PivotalRow {
  int n = 0;
  Estimate mean;
  std::size_t attempted = 0;
  std::size_t accepted = 0;
  double acceptance_rate = 0.0;
  bool reached_target = false;
};

struct PivotalScalingReport {
  double p = 0.5;
  std::vector<PivotalRow> rows;
  std::optional<double> beta_hat;  // slope of the mean against log2 n
  bool strictly_increasing = false;
  Verdict verdict = Verdict::NotApplicable;
};

/// Mean pivotal count for the blue top-bottom crossing of 2n x n cells,
/// conditioned on that crossing.
PivotalScalingReport pivotal_scaling(const std::vector<int>& ns, double p, std::size_t reps, std::uint64_t seed,
                                     std::size_t cap_factor = 100, Execution ex = Execution::Parallel);

struct DecayRow {
  int k = 0;
  Estimate estimate;
};

struct DecayReport {
  double p = 0.5;
  std::string event;
  std::vector<DecayRow> rows;
  Verdict verdict = Verdict::NotApplicable;
};

/// Blue top-bottom crossing of 2^(k+1) x 2^k cells at p = 1/2 + epsilon, or
/// with `mirrored` the red left-right crossing of 2^k x 2^(k+1) cells at
/// p = 1/2 - epsilon, which has the same law. Pass iff the estimates
/// strictly decrease in k.
DecayReport decay_check(double epsilon, const std::vector<int>& ks, std::size_t reps, std::uint64_t seed,
                        bool mirrored = false, Execution ex = Execution::Parallel);

struct PcProbe {
  double p = 0.0;
  Estimate estimate;
};

struct PcEstimate {
  double value = 0.0;
  double low = 0.0;
  double high = 0.0;
  std::vector<PcProbe> probes;
  Estimate as_estimate() const;
};

/// Bisection on p for the n x n red left-right crossing probability against
/// 1/2. All probes share the seed, so the estimated curve is monotone in p.
/// Throws EstimationFailure if [low, high] does not bracket 1/2.
PcEstimate pc_estimate(int n, std::size_t reps, double tolerance, std::uint64_t seed, double low = 0.0,
                       double high = 1.0, Execution ex = Execution::Parallel);

enum class FkgPair { StripOverlap, Identical, Duality };
std::string to_string(FkgPair f);

struct EventPair {
  EventSpec first;
  EventSpec second;
};

/// StripOverlap: red left-right crossings of the left and right 2n x n halves
/// of a 3n x n strip. Identical: the 2n x n red crossing twice. Duality:
/// red left-right against blue top-bottom of 2n x n.
EventPair fkg_pair(FkgPair which, int n);

/// Robust increasing pairs on 1x1, 2x1 and 2x2 cells for exact FKG checks.
std::vector<EventPair> fkg_catalogue();

/// Red paths along the two diagonals of the 3x3-cell square. Both need the
/// centre cell, with opposite diagonals, so they never occur together; the
/// events are increasing but not robust.
EventPair diagonal_paths_pair();

struct FkgReport {
  std::string first;
  std::string second;
  Estimate margin;  // P(A and B) - P(A)P(B), delta-method error
  Verdict verdict = Verdict::NotApplicable;
};

/// Validates the pair with the oracle at n = 1 (throws OracleRefusal on
/// failure), then estimates the margin at n. Pass iff margin > -2 stderr.
FkgReport fkg_mc_check(FkgPair which, int n, double p, std::size_t reps, std::uint64_t seed,
                       Execution ex = Execution::Parallel);

struct DualityRow {
  RectDomain domain{1, 1};
  std::size_t reps = 0;
  std::size_t violations = 0;
};

struct DualityReport {
  std::vector<DualityRow> rows;
  std::optional<std::string> counterexample;  // text dump of the first violation
  Verdict verdict = Verdict::NotApplicable;
};

DualityReport duality_mass_check(const std::vector<RectDomain>& sizes, std::size_t reps_per_size,
                                 std::uint64_t seed, double p = 0.5, Adjacency adj = Adjacency::Triangulated,
                                 Execution ex = Execution::Parallel);

struct CouplingReport {
  std::size_t reps = 0;
  std::size_t mismatches = 0;
  std::size_t measurability_failures = 0;
  std::size_t measurability_instances = 0;
};

/// Compares the exploration's exit side with the cluster-based crossing on
/// coupled samples, then runs the measurability check on the first
/// `measurability_instances` replicates.
CouplingReport exploration_coupling_check(const RectDomain& d, double p, std::size_t reps, std::uint64_t seed,
                                          std::size_t measurability_instances = 0, int resamples = 100,
                                          Execution ex = Execution::Parallel);

}  // namespace diagperc
