// Serial reference kernels against their OpenMP and labeling counterparts.
//   ./diagperc_bench --benchmark_filter=Crossing

#include <benchmark/benchmark.h>

#include "diagperc/experiments.hpp"
#include "diagperc/oracle.hpp"
#include "diagperc/pivotal.hpp"

using namespace diagperc;

namespace {

void crossing(benchmark::State& state, Execution ex) {
  const int n = static_cast<int>(state.range(0));
  const RectDomain d(2 * n, n);
  for (auto _ : state) {
    auto hits = crossing_indicators(d, 0.5, Color::Red, Axis::LeftRight, 256, 1, CrossingMethod::Clusters, ex);
    benchmark::DoNotOptimize(hits.data());
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

void exploration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RectDomain d(2 * n, n);
  for (auto _ : state) {
    auto hits = crossing_indicators(d, 0.5, Color::Red, Axis::LeftRight, 256, 1, CrossingMethod::Exploration,
                                    Execution::Serial);
    benchmark::DoNotOptimize(hits.data());
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

void tabulation(benchmark::State& state, Execution ex) {
  const EventSpec e = EventSpec::crossing(RectDomain(3, 2), Color::Red, Axis::LeftRight);
  for (auto _ : state) {
    TruthTable t = tabulate(e, ex);
    benchmark::DoNotOptimize(t.size());
  }
}

void pivotal(benchmark::State& state, bool reference) {
  const int n = static_cast<int>(state.range(0));
  const RectDomain d(2 * n, n);
  const EventSpec e = EventSpec::crossing(d, Color::Blue, Axis::TopBottom);
  const Configuration c = sample_configuration({3, 0}, 0.5, d);
  for (auto _ : state) {
    PivotalReport r = reference ? pivotal_sites_reference(c.omega, c.sigma, e) : pivotal_sites(c.omega, c.sigma, e);
    benchmark::DoNotOptimize(r.pivotal_sites.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(crossing, serial, Execution::Serial)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(crossing, parallel, Execution::Parallel)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(exploration)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(tabulation, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(tabulation, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(pivotal, reference, true)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(pivotal, labeling, false)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
