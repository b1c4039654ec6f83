// Microbenchmarks for the numerical kernels and a full simulator drop.

#include <benchmark/benchmark.h>

#include "irshcn/analytical.hpp"
#include "irshcn/netmodel.hpp"
#include "irshcn/simulator.hpp"
#include "irshcn/specialfn.hpp"

namespace {

irshcn::Scenario reference_scenario() {
    irshcn::Scenario s;
    s.tiers.push_back({53.0, 20.0, 5e-5, 4.0, 1.0, 1.0});
    s.tiers.push_back({33.0, 10.0, 2.5e-4, 3.5, 1.0, 1.0});
    s.irs = {1.0, 1000, 1e-3, 3.0, 50.0};
    s.eval.sinr_threshold = 1.0;
    return s;
}

void bm_gauss_2f1_series(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(irshcn::specialfn::gauss_2f1(1.0, 0.5, 1.5, -0.4));
}
BENCHMARK(bm_gauss_2f1_series);

void bm_gauss_2f1_pfaff(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(irshcn::specialfn::gauss_2f1(1.0, 0.5, 1.5, -50.0));
}
BENCHMARK(bm_gauss_2f1_pfaff);

void bm_gauss_2f1_connection(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(irshcn::specialfn::gauss_2f1(1.0, 0.5, 1.5, -1e6));
}
BENCHMARK(bm_gauss_2f1_connection);

void bm_u_function(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(irshcn::u_function(1e9, 3.5, 120.0, 1.4e-4));
}
BENCHMARK(bm_u_function);

void bm_conditional_coverage(benchmark::State& state) {
    const auto lin = irshcn::linearize(reference_scenario());
    const irshcn::AnalyticalEngine eng(lin);
    for (auto _ : state)
        benchmark::DoNotOptimize(eng.conditional_coverage(1, 80.0, 15.0));
}
BENCHMARK(bm_conditional_coverage);

void bm_overall_coverage(benchmark::State& state) {
    const auto lin = irshcn::linearize(reference_scenario());
    for (auto _ : state) {
        const irshcn::AnalyticalEngine eng(lin);
        benchmark::DoNotOptimize(eng.overall_coverage());
    }
}
BENCHMARK(bm_overall_coverage);

void bm_simulate_drop(benchmark::State& state) {
    const auto lin = irshcn::linearize(reference_scenario());
    irshcn::sim::Rng rng(42);
    for (auto _ : state) {
        const auto net = irshcn::sim::sample_network(lin, 4000.0, rng);
        benchmark::DoNotOptimize(irshcn::sim::simulate_sample(net, lin, rng));
    }
}
BENCHMARK(bm_simulate_drop);

} // namespace

BENCHMARK_MAIN();
