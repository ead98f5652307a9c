#include "sfcsim/experiment.hpp"

#include <filesystem>
#include <map>
#include <utility>

#include "sfcsim/errors.hpp"
#include "sfcsim/greedy.hpp"
#include "sfcsim/oracle.hpp"

namespace sfcsim {

std::string to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::Heuristic: return "heuristic";
        case AgentKind::Dql: return "dql";
        case AgentKind::Hdql: return "hdql";
        case AgentKind::Oracle: return "oracle";
    }
    throw StateError("unknown agent kind");
}

AgentKind agent_kind_from_string(const std::string& name) {
    if (name == "heuristic") return AgentKind::Heuristic;
    if (name == "dql") return AgentKind::Dql;
    if (name == "hdql") return AgentKind::Hdql;
    if (name == "oracle") return AgentKind::Oracle;
    throw ConfigError("unknown agent '" + name +
                      "' (expected heuristic, dql, hdql or oracle)");
}

bool agent_trains(AgentKind kind) {
    return kind == AgentKind::Dql || kind == AgentKind::Hdql;
}

Action heuristic_policy_action(const Environment& env) {
    return heuristic_suggest(env.state(), env.oldest_pending(), env.scenario().idle_timeout);
}

Action oracle_policy_action(const Environment& env) {
    const auto pending = env.oldest_pending();
    if (!pending) return Action{};
    const auto& use_case = env.scenario().use_case;
    const OracleObjective objective = use_case.alpha >= use_case.beta
                                          ? OracleObjective::CountThenLatency
                                          : OracleObjective::LatencyThenCount;
    try {
        const OracleResult best = brute_force_oracle(env.state(), *pending, objective);
        if (!best.witness.steps.empty()) return best.witness.steps.front();
    } catch (const Infeasible&) {
        // Nothing admissible right now; wait for load or reaping to free room.
    }
    return Action{};
}

TickPolicy make_policy(AgentKind kind, const IQFunction* qf, double boost_margin) {
    switch (kind) {
        case AgentKind::Heuristic:
            return heuristic_policy_action;
        case AgentKind::Oracle:
            return oracle_policy_action;
        case AgentKind::Dql:
            if (!qf) throw ConfigError("dql policy needs a trained value function");
            return [qf](const Environment& env) {
                const int idx = exploit_choice(qf->evaluate(env.observe()),
                                               env.valid_action_mask());
                return env.action_space()[static_cast<std::size_t>(idx)];
            };
        case AgentKind::Hdql:
            if (!qf) throw ConfigError("hdql policy needs a trained value function");
            return [qf, boost_margin](const Environment& env) {
                const int idx = exploit_choice_boosted(qf->evaluate(env.observe()),
                                                       env.valid_action_mask(),
                                                       heuristic_advice_index(env),
                                                       boost_margin);
                return env.action_space()[static_cast<std::size_t>(idx)];
            };
    }
    throw StateError("unknown agent kind");
}

namespace {

// Per-(cluster, kind) accumulation for one schedule level.
struct CellStats {
    int pods_at_end{};
    double util_sum{};     // per-pod actual/capacity summed over pod-ticks
    long pod_ticks{};
};

struct LevelStats {
    std::map<std::pair<ClusterId, ServiceKind>, CellStats> cells;
    double latency_sum{};
    double overhead_sum{};
    long mapped_ticks{};
};

}  // namespace

RolloutMetrics run_rollout(const Scenario& scenario, unsigned long seed,
                           const TickPolicy& policy) {
    Environment env(scenario);
    env.reset(seed);

    const auto clusters = scenario.topology.cluster_ids();
    const auto kinds = scenario.catalog.kinds();
    std::vector<LevelStats> levels(scenario.schedule.size());

    RolloutMetrics metrics;
    while (!env.done()) {
        const StepOutcome out = env.step(policy(env));
        metrics.episode_return += out.reward;
        metrics.violations += env.state().check_constraints().size();

        LevelStats& level = levels[static_cast<std::size_t>(out.info.level)];
        for (ClusterId cluster : clusters) {
            for (const ServiceKind& kind : kinds) {
                CellStats& cell = level.cells[{cluster, kind}];
                const auto pods = env.state().instances_of(cluster, kind);
                cell.pods_at_end = static_cast<int>(pods.size());  // last write wins
                for (const InstanceId& pod : pods) {
                    const double cap = env.state().placement(pod).size.cpu_capacity;
                    cell.util_sum += env.actual_usage(pod) / cap;
                    ++cell.pod_ticks;
                }
            }
        }
        if (out.info.mean_round_trip_ms > 0.0) {
            level.latency_sum += out.info.mean_round_trip_ms;
            level.overhead_sum += out.info.mean_overhead_ms;
            ++level.mapped_ticks;
            metrics.overhead_sum_ms += out.info.mean_overhead_ms;
            ++metrics.mapped_ticks;
        }
    }
    metrics.total_placements = env.state().placements_ever();

    for (std::size_t li = 0; li < levels.size(); ++li) {
        const LevelStats& level = levels[li];
        const double latency =
            level.mapped_ticks > 0 ? level.latency_sum / static_cast<double>(level.mapped_ticks) : 0.0;
        const double overhead =
            level.mapped_ticks > 0 ? level.overhead_sum / static_cast<double>(level.mapped_ticks) : 0.0;
        for (ClusterId cluster : clusters) {
            for (const ServiceKind& kind : kinds) {
                const auto it = level.cells.find({cluster, kind});
                TraceRow row;
                row.seed = seed;
                row.clients = scenario.schedule[li].clients;
                row.cluster = cluster;
                row.kind = kind;
                if (it != level.cells.end()) {
                    row.pods = it->second.pods_at_end;
                    row.mean_util_pct = it->second.pod_ticks > 0
                                            ? 100.0 * it->second.util_sum /
                                                  static_cast<double>(it->second.pod_ticks)
                                            : 0.0;
                }
                row.latency_ms = latency;
                row.overhead_ms = overhead;
                metrics.rows.push_back(std::move(row));
            }
        }
    }
    return metrics;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw ConfigError("experiment needs at least one seed");

    ExperimentResult result;
    std::unique_ptr<IQFunction> qf;
    if (agent_trains(config.agent)) {
        const AgentMode mode =
            config.agent == AgentKind::Hdql ? AgentMode::HDQL : AgentMode::DQL;
        TrainingRun run = train(config.scenario, mode, config.agent_config, config.episodes);
        qf = std::move(run.qfunction);
        result.curve = std::move(run.curve);
        const double bar = reward_threshold(
            heuristic_episode_return(config.scenario, config.agent_config.seed));
        result.episodes_to_threshold = episodes_to_threshold(result.curve, bar);
    }

    const TickPolicy policy =
        make_policy(config.agent, qf.get(), config.agent_config.boost_margin);

    double overhead_sum = 0.0;
    long mapped_ticks = 0;
    for (unsigned long seed : config.seeds) {
        RolloutMetrics metrics = run_rollout(config.scenario, seed, policy);
        result.total_placements += metrics.total_placements;
        result.violations += metrics.violations;
        overhead_sum += metrics.overhead_sum_ms;
        mapped_ticks += metrics.mapped_ticks;
        result.seed_returns.push_back(metrics.episode_return);
        result.rows.insert(result.rows.end(),
                           std::make_move_iterator(metrics.rows.begin()),
                           std::make_move_iterator(metrics.rows.end()));
    }
    result.mean_overhead_ms =
        mapped_ticks > 0 ? overhead_sum / static_cast<double>(mapped_ticks) : 0.0;

    if (!config.out_dir.empty()) {
        const std::filesystem::path dir(config.out_dir);
        result.trace_path = (dir / "trace.csv").string();
        result.summary_path = (dir / "summary.json").string();
        emit_trace(result.trace_path, result.rows);
        emit_summary(result.summary_path, result.total_placements, result.violations,
                     result.mean_overhead_ms, result.episodes_to_threshold);
        if (agent_trains(config.agent)) {
            result.curve_path = (dir / "curve.csv").string();
            emit_curve(result.curve_path, result.curve);
        }
    }
    return result;
}

}  // namespace sfcsim
