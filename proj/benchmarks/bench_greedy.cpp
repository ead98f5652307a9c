#include <benchmark/benchmark.h>

#include <sfcsim/greedy.hpp>
#include <sfcsim/oracle.hpp>
#include <sfcsim/scenario_config.hpp>

namespace {

// A fresh two-stage request on an untouched record-exchange deployment.
sfcsim::ProvisioningState fresh_state(const sfcsim::Scenario& scenario, int clients) {
    sfcsim::ProvisioningState state(scenario.topology, scenario.catalog);
    state.add_request(sfcsim::make_chain_request(1, scenario.ingress, scenario.chain,
                                                 clients, scenario.use_case.delay_bound_ms));
    return state;
}

void bench_greedy_plan(benchmark::State& bench) {
    const sfcsim::Scenario scenario = sfcsim::builtin_scenario("ehr");
    const sfcsim::ProvisioningState state = fresh_state(scenario, 10);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(sfcsim::greedy_provision(state, 1));
    }
}
BENCHMARK(bench_greedy_plan);

void bench_heuristic_suggest(benchmark::State& bench) {
    const sfcsim::Scenario scenario = sfcsim::builtin_scenario("ehr");
    const sfcsim::ProvisioningState state = fresh_state(scenario, 10);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(
            sfcsim::heuristic_suggest(state, 1, scenario.idle_timeout));
    }
}
BENCHMARK(bench_heuristic_suggest);

void bench_exhaustive_plan(benchmark::State& bench) {
    const sfcsim::Scenario scenario = sfcsim::builtin_scenario("ehr");
    const sfcsim::ProvisioningState state = fresh_state(scenario, 10);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(sfcsim::brute_force_oracle(state, 1));
    }
}
BENCHMARK(bench_exhaustive_plan);

}  // namespace

BENCHMARK_MAIN();
