#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sfcsim/actions.hpp"
#include "sfcsim/scenario.hpp"

namespace sfcsim {

using Observation = std::vector<double>;

// The fixed, enumerable action space of a scenario, in canonical order:
// every Place (cluster asc x kind asc x size by capacity asc), then every
// Map (cluster x kind x slot x chain position), then every Destroy
// (cluster x kind x slot), then a single trailing NoOp.
std::vector<Action> enumerate_actions(const Scenario& scenario);

// Diagnostics carried alongside each step's reward.
struct StepInfo {
    bool action_valid{true};
    std::string refusal;  // guard or resolution failure text when invalid
    int reaped_pods{};
    double mean_round_trip_ms{};  // over fully mapped requests, 0 when none
    double mean_overhead_ms{};
    double reward_resource{};     // wasted-capacity component, in [-1, 0]
    double reward_performance{};  // latency/backlog component, in [-2, 0]
    int pending_requests{};       // not yet fully mapped
    int level{};                  // schedule rung in force after the step
    bool level_changed{};
};

struct StepOutcome {
    Observation observation;
    double reward{};
    bool done{};
    StepInfo info;
};

// Discrete-time provisioning environment. Each step applies one action,
// advances the clock one tick, refreshes every pod's actual load with burst
// noise around its profiled demand, walks the client schedule, reclaims pods
// that sat unmapped for the idle timeout, and scores the resulting state.
//
// Identical scenario + seed + action sequence reproduces identical episodes
// bit for bit; all randomness flows from the single seeded generator.
class Environment {
public:
    explicit Environment(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<Action>& action_space() const { return actions_; }
    int action_count() const { return static_cast<int>(actions_.size()); }
    // Index of `action` in the canonical space; nullopt when out of range
    // (e.g. a slot beyond the addressable window).
    std::optional<int> action_index(const Action& action) const;

    Observation reset(unsigned long seed);
    StepOutcome step(const Action& action);
    StepOutcome step(int action_index);

    // True for actions that reference something actionable right now: a
    // candidate cluster, an occupied slot for Map/Destroy, a pending request
    // for Map, a kind the chain uses. Capacity and delay guards are *not*
    // checked here — picking a structurally valid action that a guard then
    // refuses is scored as an invalid move, not masked away.
    std::vector<bool> valid_action_mask() const;

    const ProvisioningState& state() const { return state_; }
    Tick clock() const { return state_.clock(); }
    bool done() const;
    int current_level() const { return level_; }
    int current_clients() const { return scenario_.schedule[static_cast<std::size_t>(level_)].clients; }
    std::optional<RequestId> oldest_pending() const;

    // This tick's noisy load of a pod (profiled demand until the first
    // refresh after it is placed).
    double actual_usage(const InstanceId& id) const;

    // In-chain response time under current load: per-pod processing delay
    // scaled by an overload factor (util^exponent once util exceeds 1),
    // plus virtual-link transfer delays, plus the discovery penalty once per
    // distinct hosting cluster. Throws RequestNotFullyMapped.
    double simulate_latency(RequestId request) const;

    // simulate_latency plus the path from the ingress to the chain head and
    // from the chain tail to the egress.
    double round_trip_ms(RequestId request) const;

    // Round trip minus the chain-free ingress-to-egress path: the cost the
    // chain itself adds for this request.
    double overhead_ms(RequestId request) const;

    double baseline_path_ms() const { return baseline_path_ms_; }

    Observation observe() const;

private:
    void apply_schedule_level(int level);
    void refresh_actual_loads();
    int reap_idle();
    double normal_draw();

    Scenario scenario_;
    std::vector<Action> actions_;
    std::vector<ClusterId> candidates_;
    ProvisioningState state_;
    std::mt19937_64 rng_;
    std::map<InstanceId, double> actual_;
    int level_{0};
    Tick level_started_at_{0};
    int next_request_id_{1};
    double baseline_path_ms_{0.0};
    bool have_spare_normal_{false};
    double spare_normal_{0.0};
};

}  // namespace sfcsim
