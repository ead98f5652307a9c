#include <benchmark/benchmark.h>

#include <random>

#include <sfcsim/qfunction.hpp>

namespace {

// The network shape the record-exchange deployment trains: 13 observation
// features, 85 actions, two hidden layers.
sfcsim::MlpConfig probe_config() {
    sfcsim::MlpConfig config;
    config.inputs = 13;
    config.outputs = 85;
    config.hidden = {64, 64};
    config.seed = 1;
    return config;
}

std::vector<sfcsim::Transition> probe_batch(int size, int inputs, int outputs) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<sfcsim::Transition> batch;
    for (int i = 0; i < size; ++i) {
        sfcsim::Transition t;
        t.state.resize(static_cast<std::size_t>(inputs));
        t.next_state.resize(static_cast<std::size_t>(inputs));
        for (auto& x : t.state) x = unit(rng);
        for (auto& x : t.next_state) x = unit(rng);
        t.action = static_cast<int>(rng() % static_cast<unsigned long>(outputs));
        t.reward = unit(rng) - 0.5;
        t.terminal = (i % 16) == 0;
        t.next_mask.assign(static_cast<std::size_t>(outputs), true);
        batch.push_back(std::move(t));
    }
    return batch;
}

void bench_value_evaluate(benchmark::State& bench) {
    const auto config = probe_config();
    const auto qf = sfcsim::make_mlp_qfunction(config);
    const auto batch = probe_batch(1, config.inputs, config.outputs);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(qf->evaluate(batch.front().state));
    }
}
BENCHMARK(bench_value_evaluate);

void bench_td_update(benchmark::State& bench) {
    const auto config = probe_config();
    const auto qf = sfcsim::make_mlp_qfunction(config);
    const auto batch = probe_batch(32, config.inputs, config.outputs);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(qf->td_update(batch, 0.97));
    }
}
BENCHMARK(bench_td_update);

}  // namespace
