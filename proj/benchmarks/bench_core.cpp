// Microbenchmarks for the hot integration paths.

#include <benchmark/benchmark.h>

#include "ratelab/climate_ebm.hpp"
#include "ratelab/hopf.hpp"
#include "ratelab/integrate.hpp"
#include "ratelab/slow_fast.hpp"

using namespace ratelab;

namespace {

void BM_rk4_slow_fast(benchmark::State& state) {
    const auto field = slow_fast::field_steady({0.01, 3, 0.4});
    const TimeGrid grid(0.0, 10.0, 5e-4);
    IntegrateOptions opts;
    opts.record_stride = 0;
    for (auto _ : state) {
        auto traj = integrate_ode(field, StateVec{0.0, 0.0, 0.0}, grid, std::nullopt, opts);
        benchmark::DoNotOptimize(traj.final_state());
    }
    state.SetItemsProcessed(state.iterations() * grid.step_count());
}
BENCHMARK(BM_rk4_slow_fast);

void BM_rk4_hopf_shift(benchmark::State& state) {
    const auto field = hopf::field_shift(5.0, {4.78, 8.0, 0.0});
    const TimeGrid grid(0.0, 20.0, 1e-3);
    IntegrateOptions opts;
    opts.record_stride = 0;
    for (auto _ : state) {
        auto traj = integrate_ode(field, StateVec{0.4, 0.5, 1e-4}, grid, std::nullopt, opts);
        benchmark::DoNotOptimize(traj.final_state());
    }
    state.SetItemsProcessed(state.iterations() * grid.step_count());
}
BENCHMARK(BM_rk4_hopf_shift);

void BM_euler_maruyama_climate(benchmark::State& state) {
    const ebm::Constants k{};
    const ebm::AlbedoParams ap{};
    const double years = ebm::kModelYearSeconds;
    const VectorFieldSpec field{
        1, [&](const StateVec& s, double) { return StateVec{years * ebm::rate_si(k, ap, 1.0, s[0])}; },
        std::nullopt};
    const TimeGrid grid(0.0, 500.0, 0.02);
    IntegrateOptions opts;
    opts.record_stride = 0;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto traj = integrate_sde(field, StateVec{291.5}, grid, 1.0, RandomStream{11, stream++},
                                  std::nullopt, opts);
        benchmark::DoNotOptimize(traj.final_state());
    }
    state.SetItemsProcessed(state.iterations() * grid.step_count());
}
BENCHMARK(BM_euler_maruyama_climate);

void BM_climate_shift_classification(benchmark::State& state) {
    ebm::RShiftScenario sc;
    sc.rho = 0.18;
    ebm::ScenarioOptions opts;
    opts.record_stride = 0;
    for (auto _ : state) {
        auto run = ebm::run_scenario(sc, opts);
        benchmark::DoNotOptimize(run.classification.outcome);
    }
}
BENCHMARK(BM_climate_shift_classification);

}  // namespace

BENCHMARK_MAIN();
