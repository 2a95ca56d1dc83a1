#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "diagperc/connectivity.hpp"
#include "diagperc/exploration.hpp"
#include "diagperc/experiments.hpp"

using namespace diagperc;

TEST_SUITE("exploration") {

TEST_CASE("extreme p exits on the forced side") {
  for (auto [w, h] : {std::pair{1, 1}, std::pair{8, 4}, std::pair{3, 7}}) {
    const RectDomain d(w, h);
    CHECK(explore(d, {1, 0}, 1.0).exit_side == ExitSide::Right);
    CHECK(explore(d, {1, 0}, 0.0).exit_side == ExitSide::Bottom);
  }
}

TEST_CASE("exit side matches the cluster crossing on 10^4 coupled samples") {
  const RectDomain d(8, 4);
  const CouplingReport r = exploration_coupling_check(d, 0.5, 10000, 2024);
  CHECK(r.reps == 10000);
  CHECK(r.mismatches == 0);
}

TEST_CASE("coupling across shapes and p") {
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const RectDomain d(1 + static_cast<int>(k % 9), 1 + static_cast<int>((k / 9) % 6));
    const double p = 0.3 + 0.4 * static_cast<double>(k % 5) / 4.0;
    const SamplerKey key{31, k};
    const Configuration c = sample_configuration(key, p, d);
    const ExplorationResult r = explore(d, key, p);
    const bool red = has_crossing(c.omega, c.sigma, d, Color::Red, Axis::LeftRight);
    REQUIRE((r.exit_side == ExitSide::Right) == red);
    REQUIRE(r.step_count <= triangle_count(d));
  }
}

TEST_CASE("revealed values equal the eager sample") {
  const RectDomain d(9, 5);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const SamplerKey key{17, k};
    const ExplorationResult r = explore(d, key, 0.5);
    std::set<SiteCoord> seen;
    for (const auto& [s, c] : r.revealed_sites) {
      CHECK(c == sample_color(key, 0.5, s));
      CHECK(seen.insert(s).second);
    }
    for (const auto& [cell, o] : r.revealed_cells) CHECK(o == sample_diagonal(key, cell));
  }
}

TEST_CASE("measurability on 4x2 and 1x1 cells") {
  for (auto [w, h] : {std::pair{4, 2}, std::pair{1, 1}}) {
    const RectDomain d(w, h);
    for (std::uint64_t k = 0; k < 50; ++k) {
      const SamplerKey key{5, k};
      const ExplorationResult r = explore(d, key, 0.5);
      CHECK(exploration_measurability_check(d, r, key, 0.5, 100));
    }
  }
}

TEST_CASE("flipping a revealed site can change the exit") {
  // Search for a revealed site whose flip reverses the decision, which shows
  // the measurability check is not vacuous.
  const RectDomain d(4, 2);
  bool found = false;
  for (std::uint64_t k = 0; k < 200 && !found; ++k) {
    const SamplerKey key{6, k};
    const ExplorationResult r = explore(d, key, 0.5);
    for (const auto& [s, c] : r.revealed_sites) {
      if (exit_with_flipped_site(d, r, key, 0.5, s) != r.exit_side) {
        found = true;
        break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("step count stays below the triangle count") {
  CHECK(triangle_count(RectDomain(1, 1)) == 10);
  for (std::uint64_t k = 0; k < 300; ++k) {
    const RectDomain d(2 + static_cast<int>(k % 20), 2 + static_cast<int>(k % 13));
    const ExplorationResult r = explore(d, {3, k}, 0.5);
    CHECK(r.step_count <= triangle_count(d));
    CHECK(r.step_count <= 8 * static_cast<std::size_t>(d.cells_w()) * d.cells_h());
  }
}

TEST_CASE("trace format") {
  const RectDomain one(1, 1);
  const ExplorationResult red = explore(one, {0, 0}, 1.0, true);
  CHECK(red.trace.size() == red.step_count);
  CHECK(format_trace(red) ==
        "(L)-(T) apex=(0,1) color=R\n"
        "(0,1)-(T) apex=(1,1) color=R\n"
        "(1,1)-(T) apex=(R) color=R\n");

  const ExplorationResult blue = explore(one, {0, 0}, 0.0, true);
  const std::string t = format_trace(blue);
  CHECK(t.rfind("(L)-(T) apex=(0,1) color=B\n", 0) == 0);
  CHECK(t.find("apex=(B)") != std::string::npos);

  // A step that enters a cell reveals its diagonal first.
  const ExplorationResult mid = explore(RectDomain(3, 3), {8, 8}, 0.5, true);
  const std::string tm = format_trace(mid);
  CHECK(tm.find("cell (") != std::string::npos);
  CHECK(mid.revealed_cells.size() ==
        static_cast<std::size_t>(std::count(tm.begin(), tm.end(), '=') - 2 * static_cast<long>(mid.step_count)));
}

TEST_CASE("exploration at p = 1/2 exits right about half the time on squares") {
  const RectDomain d(16, 16);
  const Estimate e = crossing_experiment(d, 0.5, Color::Red, Axis::LeftRight, 4000, 77, CrossingMethod::Exploration);
  CHECK(std::abs(e.value - 0.5) < 4 * e.std_error);
}

}  // TEST_SUITE
