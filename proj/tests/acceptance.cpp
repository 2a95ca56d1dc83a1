// Acceptance run: one PASS/FAIL line per criterion, each with its own
// runtime budget. Exit status is the number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "diagperc/experiments.hpp"
#include "diagperc/oracle.hpp"

using namespace diagperc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

constexpr std::uint64_t kSeed = 0;
constexpr std::size_t kReps = 10000;

Outcome duality_exactness() {
  std::uint64_t exhaustive = 0, bad = 0;
  for (const RectDomain d : {RectDomain(1, 1), RectDomain(2, 2)}) {
    const TruthTable red = tabulate(EventSpec::crossing(d, Color::Red, Axis::LeftRight));
    const TruthTable blue = tabulate(EventSpec::crossing(d, Color::Blue, Axis::TopBottom));
    const std::uint64_t rows = std::uint64_t{1} << d.num_cells(), cols = std::uint64_t{1} << d.num_sites();
    for (std::uint64_t om = 0; om < rows; ++om)
      for (std::uint64_t s = 0; s < cols; ++s) {
        bad += red.at(om, s) == blue.at(om, s);
        ++exhaustive;
      }
  }
  const DualityReport mass = duality_mass_check(
      {RectDomain(1, 1), RectDomain(4, 2), RectDomain(16, 8), RectDomain(64, 32)}, 25000, kSeed);
  std::size_t sampled = 0, violations = 0;
  for (const auto& row : mass.rows) {
    sampled += row.reps;
    violations += row.violations;
  }
  const bool pass = exhaustive == 8192 + 32 && bad == 0 && sampled == 100000 && violations == 0;
  return {pass, "exhaustive " + std::to_string(exhaustive) + " configs, " + std::to_string(bad) +
                    " violations; sampled " + std::to_string(sampled) + " configs up to 64x32, " +
                    std::to_string(violations) + " violations"};
}

Outcome critical_square_crossing() {
  bool pass = true;
  std::string detail;
  for (int n : {1, 2}) {
    const Rational exact =
        enumerate_prob(EventSpec::crossing(RectDomain(n, n), Color::Red, Axis::LeftRight), Probability(0.5))
            .probability;
    pass = pass && exact == Rational(1, 2);
    detail += "exact n=" + std::to_string(n) + ": " + Probability(exact).text() + "; ";
  }
  for (int n : {8, 16, 32}) {
    const Estimate e = crossing_experiment(RectDomain(n, n), 0.5, Color::Red, Axis::LeftRight, kReps, kSeed);
    const double z = std::abs(e.value - 0.5) / e.std_error;
    pass = pass && z <= 4.0;
    detail += fmt("n=%g: %.4f (%.2f se); ", n, e.value, z);
  }
  return {pass, detail};
}

Outcome rsw_bound() {
  const BoundReport r = rsw_check({8, 16, 32}, kReps, kSeed);
  std::string detail;
  for (const auto& row : r.rows) detail += fmt("n=%g: lower %.4f; ", row.n, row.lower);
  detail += "threshold 1/16";
  return {r.verdict == Verdict::Pass, detail};
}

Outcome fkg() {
  const std::array<Probability, 3> ps{Probability(Rational(1, 4)), Probability(Rational(1, 2)),
                                      Probability(Rational(3, 4))};
  const auto catalogue = fkg_catalogue();
  bool exact_ok = catalogue.size() >= 10;
  std::size_t checked = 0;
  Rational min_margin = 1;
  for (const auto& pair : catalogue) {
    for (const auto& p : ps) {
      try {
        const Rational m = verify_fkg(pair.first, pair.second, p);
        if (m < min_margin) min_margin = m;
        exact_ok = exact_ok && m >= 0;
        ++checked;
      } catch (const OracleRefusal&) {
        exact_ok = false;
      }
    }
  }

  const FkgReport strip = fkg_mc_check(FkgPair::StripOverlap, 16, 0.5, kReps, kSeed);
  const FkgReport same = fkg_mc_check(FkgPair::Identical, 16, 0.5, kReps, kSeed);
  const bool mc_ok = strip.verdict == Verdict::Pass && same.verdict == Verdict::Pass;

  const EventPair paths = diagonal_paths_pair();
  bool refused = false;
  try {
    (void)verify_fkg(paths.first, paths.second, Probability(0.5));
  } catch (const OracleRefusal& r) {
    refused = std::string(r.what()).find("not robust") != std::string::npos;
  }
  const Rational forced = fkg_margin(paths.first, paths.second, Probability(0.5));

  std::string detail = std::to_string(catalogue.size()) + " pairs x 3 p, " + std::to_string(checked) +
                       " exact margins, min " + Probability(min_margin).text() + "; ";
  detail += fmt("MC n=16 strip %.5f (se %.5f), ", strip.margin.value, strip.margin.std_error);
  detail += fmt("identical %.5f; ", same.margin.value);
  detail += std::string(refused ? "path pair refused" : "path pair NOT refused") + ", forced margin " +
            (forced < 0 ? "-" : "") + Probability(abs(forced)).text();
  return {exact_ok && mc_ok && refused && forced < 0, detail};
}

Outcome russo() {
  bool pass = true;
  int checked = 0;
  for (const RectDomain d : {RectDomain(1, 1), RectDomain(2, 2)}) {
    for (const Rational& p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      const RussoResult red = russo_exact(EventSpec::crossing(d, Color::Red, Axis::LeftRight), Probability(p));
      const RussoResult blue = russo_exact(EventSpec::crossing(d, Color::Blue, Axis::TopBottom), Probability(p));
      pass = pass && red.identity_holds() && red.sign == 1 && blue.identity_holds() && blue.sign == -1;
      checked += 2;
    }
  }
  return {pass, std::to_string(checked) + " exact identities (red LR +, blue TB -) on 1x1 and 2x2"};
}

Outcome exploration_coupling() {
  std::size_t mismatches = 0, reps = 0;
  for (const RectDomain d : {RectDomain(8, 4), RectDomain(16, 16), RectDomain(32, 16)}) {
    const CouplingReport r = exploration_coupling_check(d, 0.5, kReps, kSeed);
    mismatches += r.mismatches;
    reps += r.reps;
  }
  const CouplingReport m = exploration_coupling_check(RectDomain(32, 16), 0.5, 100, kSeed + 1, 100, 100);
  const bool pass = mismatches == 0 && m.mismatches == 0 && m.measurability_instances == 100 &&
                    m.measurability_failures == 0;
  return {pass, std::to_string(reps) + " coupled samples, " + std::to_string(mismatches) + " mismatches; " +
                    std::to_string(m.measurability_instances) + " instances x 100 resamples, " +
                    std::to_string(m.measurability_failures) + " measurability failures"};
}

Outcome pivotal_growth() {
  const PivotalScalingReport r = pivotal_scaling({8, 16, 32, 64}, 0.5, 2000, kSeed);
  bool enough = true;
  std::string detail;
  for (const auto& row : r.rows) {
    enough = enough && row.accepted >= 2000;
    detail += fmt("n=%g: %.3f; ", row.n, row.mean.value);
  }
  detail += fmt("beta_hat %.4f", r.beta_hat.value_or(NAN));
  return {enough && r.verdict == Verdict::Pass, detail};
}

Outcome sharpness() {
  const DecayReport blue = decay_check(0.05, {3, 4, 5, 6}, kReps, kSeed);
  const DecayReport red = decay_check(0.05, {3, 4, 5, 6}, kReps, kSeed, true);
  std::string detail = "p=0.55 blue TB:";
  for (const auto& row : blue.rows) detail += fmt(" %.4f", row.estimate.value);
  detail += "; p=0.45 red LR:";
  for (const auto& row : red.rows) detail += fmt(" %.4f", row.estimate.value);
  return {blue.verdict == Verdict::Pass && red.verdict == Verdict::Pass, detail};
}

Outcome pc() {
  const PcEstimate e = pc_estimate(32, 20000, 0.01, kSeed);
  return {e.value >= 0.48 && e.value <= 0.52,
          fmt("p_c estimate %.4f, bracket [%.4f, %.4f]", e.value, e.low, e.high) + ", " +
              std::to_string(e.probes.size()) + " probes"};
}

CellType swap_ab(CellType t) { return t == CellType::A ? CellType::B : t == CellType::B ? CellType::A : t; }

Outcome census() {
  int counts[3] = {0, 0, 0};
  bool mirror = true, swap = true, neighbor = true;
  for (int bits = 0; bits < 16; ++bits) {
    const Color nw = Color(bits & 1), ne = Color((bits >> 1) & 1), sw = Color((bits >> 2) & 1),
                se = Color((bits >> 3) & 1);
    const CellType t = classify_cell(nw, ne, sw, se);
    ++counts[static_cast<int>(t)];
    mirror = mirror && classify_cell(ne, nw, se, sw) == swap_ab(t);
    swap = swap && classify_cell(opposite(nw), opposite(ne), opposite(sw), opposite(se)) == swap_ab(t);
  }
  // Neighbor symmetry, exhaustively over every diagonal choice on 2x2 cells.
  const RectDomain d(2, 2);
  for (std::uint64_t om = 0; om < 16; ++om) {
    const DiagonalConfig omega = diagonals_from_bits(d, om);
    for (std::size_t i = 0; i < d.num_sites(); ++i) {
      const SiteCoord u = d.site_at(i);
      for (const SiteCoord v : neighbors(u, d, omega)) {
        const auto back = neighbors(v, d, omega);
        neighbor = neighbor && std::find(back.begin(), back.end(), u) != back.end();
      }
    }
  }
  const bool pass = counts[0] == 6 && counts[1] == 5 && counts[2] == 5 && mirror && swap && neighbor;
  return {pass, std::to_string(counts[0]) + " N / " + std::to_string(counts[1]) + " A / " +
                    std::to_string(counts[2]) + " B; mirror " + (mirror ? "ok" : "broken") + ", color swap " +
                    (swap ? "ok" : "broken") + ", neighbor symmetry " + (neighbor ? "ok" : "broken")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "duality exactness", 60, duality_exactness},
      {2, "critical square crossing", 120, critical_square_crossing},
      {3, "RSW bound 1/16", 120, rsw_bound},
      {4, "FKG", 120, fkg},
      {5, "Russo identity", 60, russo},
      {6, "exploration coupling", 120, exploration_coupling},
      {7, "pivotal growth", 600, pivotal_growth},
      {8, "sharpness", 300, sharpness},
      {9, "p_c estimate", 300, pc},
      {10, "classification census", 1, census},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s [%.1f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed;
}
