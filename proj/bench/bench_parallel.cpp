#include <benchmark/benchmark.h>

#include "sdelab/ergodicity/kernel.hpp"
#include "sdelab/exit/brownian_laws.hpp"
#include "sdelab/exit/exit_mc.hpp"

using namespace sdelab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::openmp : Execution::serial; }

void BM_ExitBall(benchmark::State& state) {
    ExitOptions opts;
    opts.n_paths = 2000;
    opts.h = 1e-3;
    opts.exec = mode(state);
    const std::vector<double> x0{0.0, 0.0};
    const auto d = Domain::ball(1.0, {0.0, 0.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_exit(SdeModel::brownian(2), x0, d, opts, GaussianStream(1, 0)).mean_time);
    state.SetLabel(state.range(0) ? "openmp" : "serial");
}

void BM_Arcsine(benchmark::State& state) {
    const TimeGrid grid(0.0, 1.0, 1000);
    for (auto _ : state)
        benchmark::DoNotOptimize(arcsine_occupation(5000, grid, GaussianStream(2, 0), mode(state)).ks_statistic);
    state.SetLabel(state.range(0) ? "openmp" : "serial");
}

void BM_KernelMc(benchmark::State& state) {
    KernelOptions opts;
    opts.method = KernelMethod::mc;
    opts.mc_paths = 2000;
    opts.mc_steps = 100;
    opts.exec = mode(state);
    const Grid1D grid(-4.0, 4.0, 60);
    for (auto _ : state)
        benchmark::DoNotOptimize(discretize_kernel(SdeModel::ornstein_uhlenbeck(1.0, 1.0), grid, 1.0, opts).size());
    state.SetLabel(state.range(0) ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_ExitBall)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Arcsine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KernelMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
