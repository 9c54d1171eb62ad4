// Serial reference vs OpenMP kernels: Monte Carlo trial loop and budget grid.

#include <benchmark/benchmark.h>

#include "needle/budget.hpp"
#include "needle/montecarlo.hpp"

namespace {

using namespace needle;

const NeedleDerived& reference_needle()
{
    static const NeedleDerived n = derive_needle(NeedleGeometry::reference(), Material::cobalt());
    return n;
}

void BM_WalkTrials(benchmark::State& state, Execution exec)
{
    const auto& needle = reference_needle();
    const KickProcess process{1.0, FixedMagnitudeSampler{1e3 * PhysicalConstants::cgs().hbar}, 42};
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto r = run_trials(process, needle, 100.0, trials, exec);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Budget(benchmark::State& state, Execution exec)
{
    const auto& needle = reference_needle();
    const auto material = Material::cobalt();
    const auto env = EnvironmentConditions::reference();
    const auto loop = PickupLoop::for_needle(needle.geometry.length);
    BudgetOptions opts;
    opts.exec = exec;
    const auto points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto b = assemble_budget(needle, material, env, loop, 1e-2, 1e3, points, opts);
        benchmark::DoNotOptimize(b.total.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_WalkTrials, serial, Execution::Serial)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_WalkTrials, openmp, Execution::Parallel)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_Budget, serial, Execution::Serial)->Arg(200)->Arg(20000);
BENCHMARK_CAPTURE(BM_Budget, openmp, Execution::Parallel)->Arg(200)->Arg(20000);

BENCHMARK_MAIN();
