#include <doctest.h>

#include <bit>
#include <cstring>

#include "diagperc/oracle.hpp"
#include "diagperc/pivotal.hpp"
#include "diagperc/sampler.hpp"

using namespace diagperc;

TEST_SUITE("pivotal") {

TEST_CASE("examples on one cell") {
  const RectDomain one(1, 1);
  const EventSpec blue_tb = EventSpec::crossing(one, Color::Blue, Axis::TopBottom);

  const PivotalReport none = pivotal_sites(DiagonalConfig(1, 1, Diagonal::NESW), ColorConfig(1, 1, Color::Blue), blue_tb);
  CHECK(none.event_occurred);
  CHECK(none.pivotal_sites.empty());

  ColorConfig split(1, 1, Color::Red);
  split.set({0, 0}, Color::Blue);
  split.set({0, 1}, Color::Blue);
  const DiagonalConfig nwse(1, 1, Diagonal::NWSE);
  const PivotalReport col = pivotal_sites(nwse, split, blue_tb);
  CHECK(col.event_occurred);
  CHECK(col.pivotal_sites == std::vector<SiteCoord>{{0, 0}, {0, 1}});
  CHECK(pivotal_sites_reference(nwse, split, blue_tb).pivotal_sites == col.pivotal_sites);

  const PivotalReport c = pivotal_sites(nwse, split, EventSpec::constant(one, true));
  CHECK(c.pivotal_sites.empty());
}

TEST_CASE("labeling route requires a whole-domain crossing") {
  const RectDomain d(4, 2);
  const EventSpec sub = EventSpec::crossing(d, Color::Red, Axis::LeftRight, Window{{1, 0}, 2, 2});
  CHECK_THROWS_AS(pivotal_sites_crossing(DiagonalConfig(4, 2), ColorConfig(4, 2), sub), DomainError);
  CHECK_THROWS_AS(pivotal_sites(DiagonalConfig(3, 2), ColorConfig(3, 2), sub), DomainError);
}

TEST_CASE("reference and labeling routes agree on 1000 instances up to 32x16") {
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const int w = 1 + static_cast<int>((r * 7) % 32);
    const int h = 1 + static_cast<int>((r * 3) % 16);
    const RectDomain d(w, h);
    const double p = 0.4 + 0.2 * static_cast<double>(r % 3) / 2.0;
    const Configuration c = sample_configuration({123, r}, p, d);
    const Color col = r % 2 ? Color::Red : Color::Blue;
    const Axis ax = (r / 2) % 2 ? Axis::LeftRight : Axis::TopBottom;
    const EventSpec e = EventSpec::crossing(d, col, ax);
    const PivotalReport fast = pivotal_sites_crossing(c.omega, c.sigma, e);
    const PivotalReport ref = pivotal_sites_reference(c.omega, c.sigma, e);
    REQUIRE(fast.event_occurred == ref.event_occurred);
    REQUIRE(fast.pivotal_sites == ref.pivotal_sites);
  }
}

TEST_CASE("pivotal sites of an increasing event are one-sided") {
  const RectDomain d(6, 4);
  const EventSpec e = EventSpec::crossing(d, Color::Red, Axis::LeftRight);
  for (std::uint64_t r = 0; r < 200; ++r) {
    const Configuration c = sample_configuration({4, r}, 0.5, d);
    for (const SiteCoord s : pivotal_sites(c.omega, c.sigma, e).pivotal_sites) {
      ColorConfig on = c.sigma, off = c.sigma;
      on.set(s, Color::Red);
      off.set(s, Color::Blue);
      CHECK(e.evaluate(c.omega, on));
      CHECK_FALSE(e.evaluate(c.omega, off));
    }
  }
}

TEST_CASE("pivotal counts summed over a truth table match per-configuration flips") {
  const RectDomain d(2, 1);
  const EventSpec e = EventSpec::crossing(d, Color::Red, Axis::LeftRight);
  const TruthTable t = tabulate(e);
  const auto by_red = pivotal_counts_by_red(t);
  std::vector<std::uint64_t> direct(by_red.size(), 0);
  for (std::uint64_t om = 0; om < (1u << d.num_cells()); ++om) {
    for (std::uint64_t s = 0; s < (1u << d.num_sites()); ++s) {
      const auto rep = pivotal_sites(diagonals_from_bits(d, om), colors_from_bits(d, s), e);
      direct[static_cast<std::size_t>(std::popcount(s))] += rep.pivotal_sites.size();
    }
  }
  CHECK(direct == by_red);
}

TEST_CASE("conditional mean at p = 0 is zero") {
  for (int n : {2, 3, 4}) {
    const EventSpec e = EventSpec::crossing(RectDomain(2 * n, n), Color::Blue, Axis::TopBottom);
    const ConditionalPivotal c = conditional_pivotal_mean(e, 0.0, 200, 1);
    CHECK(c.accepted == 200);
    CHECK(c.attempted == 200);
    CHECK(c.mean.value == 0.0);
  }
}

TEST_CASE("conditional mean is positive and reproducible") {
  const EventSpec e = EventSpec::crossing(RectDomain(16, 8), Color::Blue, Axis::TopBottom);
  const ConditionalPivotal a = conditional_pivotal_mean(e, 0.5, 2000, 99);
  const ConditionalPivotal b = conditional_pivotal_mean(e, 0.5, 2000, 99, 100, Execution::Serial);
  CHECK(a.accepted == 2000);
  CHECK(a.reached_target);
  CHECK(a.mean.value > 0.0);
  CHECK(std::memcmp(&a.mean.value, &b.mean.value, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.mean.std_error, &b.mean.std_error, sizeof(double)) == 0);
  CHECK(a.attempted == b.attempted);
}

TEST_CASE("impossible conditioning fails with diagnostics") {
  const EventSpec e = EventSpec::crossing(RectDomain(4, 2), Color::Red, Axis::LeftRight);
  try {
    conditional_pivotal_mean(e, 0.0, 10, 1, 5);
    FAIL("expected EstimationFailure");
  } catch (const EstimationFailure& f) {
    CHECK(f.attempts() == 50);
  }
}

TEST_CASE("conditional means grow with n") {
  double prev = 0.0;
  for (int n : {8, 16, 32}) {
    const EventSpec e = EventSpec::crossing(RectDomain(2 * n, n), Color::Blue, Axis::TopBottom);
    const ConditionalPivotal c = conditional_pivotal_mean(e, 0.5, 2000, 5);
    CHECK(c.mean.value > prev);
    prev = c.mean.value;
  }
}

}  // TEST_SUITE
