// Compares the OpenMP grid evaluators against their serial reference
// implementations (identical loop bodies, bitwise identical output).

#include <benchmark/benchmark.h>

#include "deltaprop/dynamics.hpp"
#include "deltaprop/grid_eval.hpp"
#include "deltaprop/kernels.hpp"

using namespace deltaprop;
using kernels::LaserSystem;

namespace {

const auto kSys = LaserSystem::star({0.4, 1.2, 0.8}, 0, 0.3);

kernels::KernelMatrix star_eval(double x, double t, double xp, double tp) {
  return kernels::star_kernel(kSys, x, t, xp, tp);
}

void bench_kernel_grid(benchmark::State& state, bool parallel) {
  const auto xs = grid_eval::linspace(-3.0, 3.0, 48);
  const auto xps = grid_eval::linspace(-3.0, 3.0, 48);
  const std::vector<double> ts = {0.3, 0.9, 1.7};
  for (auto _ : state) {
    auto out = parallel ? grid_eval::kernel_grid(star_eval, xs, xps, ts)
                        : grid_eval::kernel_grid_serial(star_eval, xs, xps, ts);
    benchmark::DoNotOptimize(out);
  }
}

void bench_field_grid(benchmark::State& state, bool parallel) {
  dynamics::SinePacketScenario sp;
  sp.length = 1.0;
  sp.n = 1;
  sp.q = 5.0;
  sp.sys = LaserSystem::two_level(1.3, 2.5);
  auto field = [&](double x, double t) {
    return dynamics::sine_packet_with_laser(x, t, sp);
  };
  const auto xs = grid_eval::linspace(-5.0, 8.0, 2000);
  for (auto _ : state) {
    auto out = parallel ? grid_eval::field_grid(field, xs, 0.8)
                        : grid_eval::field_grid_serial(field, xs, 0.8);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_kernel_grid, serial, false);
BENCHMARK_CAPTURE(bench_kernel_grid, openmp, true);
BENCHMARK_CAPTURE(bench_field_grid, serial, false);
BENCHMARK_CAPTURE(bench_field_grid, openmp, true);

BENCHMARK_MAIN();
