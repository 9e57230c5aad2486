// Serial reference vs OpenMP kernels on a dense sample.
#include <benchmark/benchmark.h>

#include "harddisk/connectivity.hpp"
#include "harddisk/defect.hpp"
#include "harddisk/discrete.hpp"
#include "harddisk/sampling.hpp"
#include "harddisk/voronoi.hpp"

namespace {

const hd::Configuration& dense_sample() {
  static const hd::Configuration c = [] {
    hd::RngStream g(42, 0);
    hd::McmcParams p;
    p.sweeps = 60;
    const hd::Configuration x =
        hd::sample_hard_disk_mcmc(hd::PoissonModelSpec{hd::Rect::square(30.0), 40.0, {}}, p, g);
    return hd::saturate(x, hd::Rect::square(24.0), 4.0);
  }();
  return c;
}

hd::Exec mode(const benchmark::State& s) { return s.range(0) ? hd::Exec::parallel : hd::Exec::serial; }

void BM_voronoi_cells(benchmark::State& s) {
  const auto& c = dense_sample();
  for (auto _ : s) benchmark::DoNotOptimize(hd::voronoi_cells(c, hd::Rect::square(24.0), mode(s)));
}

void BM_build_graph(benchmark::State& s) {
  const auto& c = dense_sample();
  for (auto _ : s) benchmark::DoNotOptimize(hd::build_graph(c, 0.5, nullptr, mode(s)));
}

void BM_defect(benchmark::State& s) {
  const auto& c = dense_sample();
  for (auto _ : s) benchmark::DoNotOptimize(hd::defect(c, c, hd::Rect::square(20.0), 4.0, mode(s)));
}

void BM_tau(benchmark::State& s) {
  const auto& c = dense_sample();
  for (auto _ : s) benchmark::DoNotOptimize(hd::tau_from_configuration(c.points(), 0.5, 8.0, 2, mode(s)));
}

}  // namespace

BENCHMARK(BM_voronoi_cells)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_graph)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_defect)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tau)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
