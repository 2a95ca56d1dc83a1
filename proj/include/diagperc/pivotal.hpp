#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagperc/event.hpp"
#include "diagperc/replicates.hpp"
#include "diagperc/sampler.hpp"
#include "diagperc/stats.hpp"

namespace diagperc {

/// Sites whose color flip toggles the event, diagonals held fixed.
struct PivotalReport {
  std::string event;
  std::optional<SamplerKey> key;
  std::vector<SiteCoord> pivotal_sites;  // row-major order
  bool event_occurred = false;
};

/// Flip every site and re-evaluate. Works for any event.
PivotalReport pivotal_sites_reference(const DiagonalConfig& omega, const ColorConfig& sigma, const EventSpec& event);

/// Whole-domain crossings only. Uses one red and one blue labeling: a site is
/// pivotal iff, colored red, its red cluster joins the two red arcs and,
/// colored blue, its blue cluster joins the two blue arcs.
PivotalReport pivotal_sites_crossing(const DiagonalConfig& omega, const ColorConfig& sigma, const EventSpec& event);

/// Picks the labeling route for whole-domain crossings, the reference
/// otherwise.
PivotalReport pivotal_sites(const DiagonalConfig& omega, const ColorConfig& sigma, const EventSpec& event);

/// Raised when rejection sampling accepts nothing within its attempt cap.
class EstimationFailure : public std::runtime_error {
 public:
  EstimationFailure(const std::string& what, std::size_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::size_t attempts() const { return attempts_; }

 private:
  std::size_t attempts_;
};

struct ConditionalPivotal {
  Estimate mean;            // accepted replicates only
  std::size_t attempted = 0;
  std::size_t accepted = 0;
  bool reached_target = false;
};

/// Mean pivotal count over configurations conditioned on the event, drawn
/// by rejection from replicates 0, 1, 2, ... of `seed`. Stops after `reps`
/// acceptances or `cap_factor * reps` attempts. The accepted set is the
/// first `reps` accepted replicate indices, so the result does not depend
/// on the worker count.
ConditionalPivotal conditional_pivotal_mean(const EventSpec& event, double p, std::size_t reps,
                                            std::uint64_t seed, std::size_t cap_factor = 100,
                                            Execution ex = Execution::Parallel);

}  // namespace diagperc
