#include <benchmark/benchmark.h>

#include "snp/fixed_price.hpp"
#include "snp/generator.hpp"
#include "snp/oracle.hpp"

namespace {

snp::Instance sized_instance(int agents, int customers) {
    snp::GenSpec spec;
    spec.seed = 7;
    spec.num_agents = agents;
    spec.num_customers = customers;
    spec.overrides.wait = snp::Range{30, 120};
    return snp::generate_instance(spec);
}

snp::Instance oracle_instance() {
    snp::GenSpec spec;
    spec.seed = 7;
    spec.num_agents = 3;
    spec.num_customers = 10;
    spec.overrides.capacity = snp::Range{2, 4};
    spec.overrides.wait = snp::Range{20, 60};
    spec.overrides.unit_prod_time = 1.0;
    spec.overrides.service_level = 0.3;
    return snp::generate_instance(spec);
}

void BM_FixedPrice(benchmark::State& state, snp::Execution exec) {
    const auto inst = sized_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(snp::try_solve_fixed_r(inst, 100.0, exec));
}

void BM_OracleFixed(benchmark::State& state, snp::Execution exec) {
    const auto inst = oracle_instance();
    for (auto _ : state) benchmark::DoNotOptimize(snp::oracle_fixed_r(inst, 95.0, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_FixedPrice, serial, snp::Execution::Serial)->Args({4, 100})->Args({18, 300})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FixedPrice, parallel, snp::Execution::Parallel)->Args({4, 100})->Args({18, 300})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OracleFixed, serial, snp::Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OracleFixed, parallel, snp::Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
