#include "sfcsim/agent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sfcsim/errors.hpp"
#include "sfcsim/greedy.hpp"

namespace sfcsim {

namespace {

double uniform_unit_open(std::mt19937_64& rng) {
    // (0, 1]: the complement of a [0, 1) draw built from the top 53 bits.
    return 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_pick(std::mt19937_64& rng, int count) {
    return static_cast<int>(rng() % static_cast<unsigned long>(count));
}

int masked_random(const std::vector<bool>& mask, std::mt19937_64& rng) {
    std::vector<int> open;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) open.push_back(static_cast<int>(i));
    if (open.empty()) throw StateError("no action available under the mask");
    return open[static_cast<std::size_t>(uniform_pick(rng, static_cast<int>(open.size())))];
}

double exploit_probability(const AgentConfig& config, int episode, int episodes) {
    const int ramp = std::max(1, episodes / 2);
    const double t = std::min(1.0, static_cast<double>(episode) / ramp);
    return config.exploit_start + (config.exploit_end - config.exploit_start) * t;
}

}  // namespace

int heuristic_advice_index(const Environment& env) {
    const Action advice =
        heuristic_suggest(env.state(), env.oldest_pending(), env.scenario().idle_timeout);
    return env.action_index(advice).value_or(env.action_count() - 1);
}

int exploit_choice(const std::vector<double>& values, const std::vector<bool>& mask) {
    int best = -1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i < mask.size() && !mask[i]) continue;
        if (best < 0 || values[i] > values[static_cast<std::size_t>(best)])
            best = static_cast<int>(i);
    }
    if (best < 0) throw StateError("no action available under the mask");
    return best;
}

int exploit_choice_boosted(const std::vector<double>& values, const std::vector<bool>& mask,
                           int suggested, double margin) {
    std::vector<double> boosted = values;
    if (suggested >= 0 && suggested < static_cast<int>(values.size())) {
        const double top = *std::max_element(values.begin(), values.end());
        boosted[static_cast<std::size_t>(suggested)] +=
            std::max(0.0, top - values[static_cast<std::size_t>(suggested)] + margin);
    }
    return exploit_choice(boosted, mask);
}

int select_action(const IQFunction& qf, const Observation& obs, const std::vector<bool>& mask,
                  double exploit_prob, std::mt19937_64& rng) {
    if (uniform_unit_open(rng) <= exploit_prob) return exploit_choice(qf.evaluate(obs), mask);
    return masked_random(mask, rng);
}

int select_action_hdql(const IQFunction& qf, const Observation& obs,
                       const std::vector<bool>& mask, int suggested, double margin,
                       double exploit_prob, std::mt19937_64& rng) {
    if (uniform_unit_open(rng) <= exploit_prob)
        return exploit_choice_boosted(qf.evaluate(obs), mask, suggested, margin);
    return masked_random(mask, rng);
}

double evaluate(const IQFunction& qf, const Scenario& scenario, AgentMode mode,
                unsigned long seed, double boost_margin) {
    Environment env(scenario);
    Observation obs = env.reset(seed);
    double total = 0.0;
    while (!env.done()) {
        const auto mask = env.valid_action_mask();
        int action;
        if (mode == AgentMode::HDQL)
            action = exploit_choice_boosted(qf.evaluate(obs), mask, heuristic_advice_index(env), boost_margin);
        else
            action = exploit_choice(qf.evaluate(obs), mask);
        auto out = env.step(action);
        total += out.reward;
        obs = std::move(out.observation);
    }
    return total;
}

double heuristic_episode_return(const Scenario& scenario, unsigned long seed) {
    Environment env(scenario);
    env.reset(seed);
    double total = 0.0;
    while (!env.done()) total += env.step(heuristic_advice_index(env)).reward;
    return total;
}

TrainingRun train(const Scenario& scenario, AgentMode mode, const AgentConfig& config,
                  int episodes) {
    if (episodes < 1) throw ConfigError("training needs at least one episode");

    Environment env(scenario);
    MlpConfig net;
    net.inputs = static_cast<int>(env.observe().size());
    net.outputs = env.action_count();
    net.hidden = config.hidden;
    net.learning_rate = config.learning_rate;
    net.gradient_clip = config.gradient_clip;
    net.seed = config.seed;
    auto qf = make_mlp_qfunction(net);

    if (config.n_step < 1) throw ConfigError("n_step must be at least 1");

    std::mt19937_64 policy_rng(config.seed * 0x9e3779b97f4a7c15ULL + 1);
    std::vector<Transition> replay;
    replay.reserve(static_cast<std::size_t>(config.replay_capacity));
    std::size_t write_at = 0;
    long steps = 0;
    long updates = 0;

    const auto store = [&](Transition t) {
        if (replay.size() < static_cast<std::size_t>(config.replay_capacity)) {
            replay.push_back(std::move(t));
        } else {
            replay[write_at] = std::move(t);
            write_at = (write_at + 1) % replay.size();
        }
    };

    // Bootstrapped targets skip n_step rewards at once, so the update
    // discount is the per-step discount compounded over the window.
    const double bootstrap_gamma = std::pow(config.gamma, config.n_step);

    // A decision whose n_step-reward window is still being filled.
    struct PendingTransition {
        Observation state;
        int action{};
        double reward_sum{};
        int age{};  // rewards accumulated so far
    };

    TrainingRun run;
    for (int episode = 0; episode < episodes; ++episode) {
        const double p = exploit_probability(config, episode, episodes);
        Observation obs = env.reset(config.seed + 7919UL * static_cast<unsigned long>(episode + 1));
        double total = 0.0;
        std::deque<PendingTransition> window;
        while (!env.done()) {
            const auto mask = env.valid_action_mask();
            const int action =
                mode == AgentMode::HDQL
                    ? select_action_hdql(*qf, obs, mask, heuristic_advice_index(env), config.boost_margin,
                                         p, policy_rng)
                    : select_action(*qf, obs, mask, p, policy_rng);
            auto out = env.step(action);
            total += out.reward;

            window.push_back(PendingTransition{std::move(obs), action, 0.0, 0});
            for (PendingTransition& pending : window) {
                pending.reward_sum += std::pow(config.gamma, pending.age) * out.reward;
                ++pending.age;
            }
            const auto next_mask = env.valid_action_mask();
            if (window.front().age == config.n_step) {
                PendingTransition ripe = std::move(window.front());
                window.pop_front();
                store(Transition{std::move(ripe.state), ripe.action, ripe.reward_sum,
                                 out.observation, out.done, next_mask});
            }
            if (out.done) {
                // The episode ended inside the remaining windows: their
                // truncated sums are complete returns, nothing to bootstrap.
                for (PendingTransition& pending : window)
                    store(Transition{std::move(pending.state), pending.action,
                                     pending.reward_sum, out.observation, true, next_mask});
                window.clear();
            }
            obs = std::move(out.observation);

            ++steps;
            if (steps % config.train_every == 0 &&
                replay.size() >= static_cast<std::size_t>(
                                     std::max(config.batch_size, config.warmup_transitions))) {
                std::vector<Transition> batch;
                batch.reserve(static_cast<std::size_t>(config.batch_size));
                for (int b = 0; b < config.batch_size; ++b)
                    batch.push_back(
                        replay[static_cast<std::size_t>(uniform_pick(policy_rng,
                                                                     static_cast<int>(replay.size())))]);
                qf->td_update(batch, bootstrap_gamma);
                if (++updates % config.target_refresh == 0) qf->refresh_target();
            }
        }
        run.curve.push_back(EpisodePoint{episode + 1, total,
                                         evaluate(*qf, scenario, mode, config.seed,
                                                  config.boost_margin)});
    }
    run.qfunction = std::move(qf);
    return run;
}

double reward_threshold(double heuristic_return) {
    return heuristic_return >= 0 ? 0.9 * heuristic_return : heuristic_return / 0.9;
}

std::optional<int> episodes_to_threshold(const std::vector<EpisodePoint>& curve,
                                         double threshold) {
    for (const auto& point : curve)
        if (point.eval_return >= threshold) return point.episode;
    return std::nullopt;
}

}  // namespace sfcsim
