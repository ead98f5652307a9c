#pragma once

#include <optional>
#include <random>

#include "sfcsim/qfunction.hpp"

namespace sfcsim {

enum class AgentMode { DQL, HDQL };

struct AgentConfig {
    std::vector<int> hidden{64, 64};
    double learning_rate{1e-3};
    double gamma{0.97};
    // Exploitation probability ramps linearly from start to end over the
    // first half of training, then stays at end.
    double exploit_start{0.1};
    double exploit_end{0.95};
    int replay_capacity{20000};
    int batch_size{32};
    int warmup_transitions{500};  // no updates until this much experience exists
    int train_every{4};           // environment steps between gradient steps
    int target_refresh{500};      // gradient steps between bootstrap refreshes
    // Rewards are summed over this many consecutive steps before
    // bootstrapping, which carries sparse payoffs backwards much faster than
    // single-step targets; 1 recovers plain one-step learning.
    int n_step{1};
    double boost_margin{0.01};    // advice bonus margin for the boosted mode
    double gradient_clip{5.0};
    unsigned long seed{1};
};

// Greedy pick over the masked action values; ties resolve to the lowest
// index so equal-value states are reproducible.
int exploit_choice(const std::vector<double>& values, const std::vector<bool>& mask);

// Greedy pick after adding the advice bonus: the suggested action receives
// max(0, max_a Q(a) - Q(suggested) + margin), exactly enough to win whenever
// the margin is positive, so exploitation follows the advice while the
// learned values of every action keep training on real outcomes.
int exploit_choice_boosted(const std::vector<double>& values, const std::vector<bool>& mask,
                           int suggested, double margin);

// The advice the boosted mode follows: the next greedy step for the oldest
// pending request, translated into the enumerated action space. Suggestions
// that fall outside the addressable slot window degrade to NoOp.
int heuristic_advice_index(const Environment& env);

// Draws from (0,1]; exploits when the draw is at or below exploit_prob, so 0
// never exploits and 1 always does. Exploration picks uniformly among the
// masked-in actions.
int select_action(const IQFunction& qf, const Observation& obs, const std::vector<bool>& mask,
                  double exploit_prob, std::mt19937_64& rng);

int select_action_hdql(const IQFunction& qf, const Observation& obs,
                       const std::vector<bool>& mask, int suggested, double margin,
                       double exploit_prob, std::mt19937_64& rng);

struct EpisodePoint {
    int episode{};         // 1-based
    double train_return{};  // sum of rewards while exploring
    double eval_return{};   // exploit-only rollout on the fixed probe seed
};

struct TrainingRun {
    std::unique_ptr<IQFunction> qfunction;
    std::vector<EpisodePoint> curve;
};

// Runs `episodes` training episodes on the scenario and probes the exploit
// policy after each one. Fully deterministic for a given config.
TrainingRun train(const Scenario& scenario, AgentMode mode, const AgentConfig& config,
                  int episodes);

// Exploit-only episode return (the probe used for the learning curve).
double evaluate(const IQFunction& qf, const Scenario& scenario, AgentMode mode,
                unsigned long seed, double boost_margin = 0.01);

// Return of one episode driven by the provisioning heuristic alone.
double heuristic_episode_return(const Scenario& scenario, unsigned long seed);

// The probe-return bar that counts as "matching the heuristic": 90% of the
// heuristic's return, oriented so the bar is easier than the heuristic for
// negative returns too.
double reward_threshold(double heuristic_return);

// Episodes needed until the probe return first reaches the threshold.
std::optional<int> episodes_to_threshold(const std::vector<EpisodePoint>& curve,
                                         double threshold);

}  // namespace sfcsim
