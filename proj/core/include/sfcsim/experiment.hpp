#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sfcsim/agent.hpp"
#include "sfcsim/report.hpp"

namespace sfcsim {

// Which decision rule drives evaluation rollouts.
enum class AgentKind { Heuristic, Dql, Hdql, Oracle };

std::string to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& name);  // throws ConfigError
bool agent_trains(AgentKind kind);                          // Dql / Hdql

// Chooses the next action given the live environment.
using TickPolicy = std::function<Action(const Environment&)>;

// One greedy step for the oldest pending request (reclaiming idle pods when
// nothing is pending).
Action heuristic_policy_action(const Environment& env);

// First step of the exhaustively optimal completion for the oldest pending
// request; NoOp when nothing is pending or no completion exists. The ranking
// follows the use case: resource-weighted cases (alpha >= beta) minimize the
// placement count first, latency-weighted ones minimize expected latency
// first.
Action oracle_policy_action(const Environment& env);

// Bundles the decision rule for `kind`. Training kinds need the learned
// value function; `qf` may be null for Heuristic/Oracle.
TickPolicy make_policy(AgentKind kind, const IQFunction* qf, double boost_margin);

// Everything one scored episode produces.
struct RolloutMetrics {
    std::vector<TraceRow> rows;     // level x cluster x kind, zero rows kept
    std::size_t total_placements{}; // every placement made, reaped ones included
    std::size_t violations{};       // constraint-audit findings summed over ticks
    double overhead_sum_ms{};       // summed over ticks with mapped requests
    long mapped_ticks{};
    double episode_return{};

    double mean_overhead_ms() const {
        return mapped_ticks > 0 ? overhead_sum_ms / static_cast<double>(mapped_ticks) : 0.0;
    }
};

// Runs one full schedule under `policy` and aggregates per-level statistics:
// for every (cluster, kind), the live pod count when the level ends and the
// pod-tick mean utilization across the level, plus the mean round trip and
// chain overhead over the ticks that had at least one fully mapped request.
RolloutMetrics run_rollout(const Scenario& scenario, unsigned long seed,
                           const TickPolicy& policy);

struct ExperimentConfig {
    Scenario scenario;
    AgentKind agent{AgentKind::Heuristic};
    int episodes{300};  // training kinds only
    std::vector<unsigned long> seeds{1, 2, 3, 4, 5};
    AgentConfig agent_config;  // hyperparameters + training seed
    std::string out_dir;       // empty: compute only, write nothing
};

struct ExperimentResult {
    std::vector<TraceRow> rows;  // all seeds, in the order given
    std::size_t total_placements{};
    std::size_t violations{};
    double mean_overhead_ms{};  // tick-weighted across every seed
    std::optional<int> episodes_to_threshold;  // training kinds only
    std::vector<EpisodePoint> curve;           // training kinds only
    std::vector<double> seed_returns;          // one rollout return per seed
    std::string trace_path;    // written files; empty when out_dir was empty
    std::string summary_path;
    std::string curve_path;
};

// Trains when the agent kind learns, evaluates one rollout per seed, and —
// when out_dir is set — writes trace.csv, summary.json and (for training
// kinds) curve.csv there.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace sfcsim
