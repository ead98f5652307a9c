#include <benchmark/benchmark.h>

#include <sfcsim/experiment.hpp>
#include <sfcsim/scenario_config.hpp>

namespace {

void bench_env_step(benchmark::State& bench) {
    const sfcsim::Scenario scenario = sfcsim::builtin_scenario("ehr");
    sfcsim::Environment env(scenario);
    env.reset(1);
    const int noop = env.action_count() - 1;
    for (auto _ : bench) {
        if (env.done()) env.reset(1);
        benchmark::DoNotOptimize(env.step(noop));
    }
}
BENCHMARK(bench_env_step);

void bench_action_mask(benchmark::State& bench) {
    const sfcsim::Scenario scenario = sfcsim::builtin_scenario("ehr");
    sfcsim::Environment env(scenario);
    env.reset(1);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(env.valid_action_mask());
    }
}
BENCHMARK(bench_action_mask);

void bench_heuristic_episode(benchmark::State& bench) {
    const sfcsim::Scenario scenario = sfcsim::builtin_scenario("ehr");
    for (auto _ : bench) {
        benchmark::DoNotOptimize(
            sfcsim::run_rollout(scenario, 1, sfcsim::heuristic_policy_action));
    }
}
BENCHMARK(bench_heuristic_episode);

}  // namespace
