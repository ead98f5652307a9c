#include "sfcsim/environment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "sfcsim/errors.hpp"

namespace sfcsim {

std::vector<Action> enumerate_actions(const Scenario& scenario) {
    std::vector<Action> actions;
    const auto clusters = scenario.topology.cluster_ids();
    const auto kinds = scenario.catalog.kinds();
    const int slots = scenario.slots_per_cluster_kind;
    const int positions = static_cast<int>(scenario.chain.size());

    for (ClusterId c : clusters)
        for (const auto& k : kinds)
            for (const auto& size : scenario.catalog.sizes_by_capacity(k))
                actions.push_back(Action{Verb::Place, c, k, size.name, 0, 0});

    for (ClusterId c : clusters)
        for (const auto& k : kinds)
            for (int slot = 0; slot < slots; ++slot)
                for (int q = 0; q < positions; ++q)
                    actions.push_back(Action{Verb::Map, c, k, "", slot, q});

    for (ClusterId c : clusters)
        for (const auto& k : kinds)
            for (int slot = 0; slot < slots; ++slot)
                actions.push_back(Action{Verb::Destroy, c, k, "", slot, 0});

    actions.push_back(Action{});  // trailing NoOp
    return actions;
}

Environment::Environment(Scenario scenario)
    : scenario_((scenario.validate(), std::move(scenario))),
      actions_(enumerate_actions(scenario_)),
      candidates_(scenario_.placement_candidates()),
      state_(scenario_.topology, scenario_.catalog) {
    baseline_path_ms_ = scenario_.topology.path_delay(scenario_.ingress, scenario_.egress).value_or(0.0);
    reset(scenario_.base_seed);
}

std::optional<int> Environment::action_index(const Action& action) const {
    for (std::size_t i = 0; i < actions_.size(); ++i)
        if (actions_[i] == action) return static_cast<int>(i);
    return std::nullopt;
}

Observation Environment::reset(unsigned long seed) {
    state_ = ProvisioningState(scenario_.topology, scenario_.catalog);
    actual_.clear();
    rng_.seed(seed);
    have_spare_normal_ = false;
    spare_normal_ = 0.0;
    level_ = 0;
    level_started_at_ = 0;
    next_request_id_ = 1;
    apply_schedule_level(0);
    return observe();
}

void Environment::apply_schedule_level(int level) {
    const auto& rung = scenario_.schedule[static_cast<std::size_t>(level)];
    const int per_group = rung.clients / rung.groups;
    const int remainder = rung.clients % rung.groups;
    for (int g = 0; g < rung.groups; ++g) {
        const int share = per_group + (g < remainder ? 1 : 0);
        const RequestId id = g + 1;
        if (id < next_request_id_) {
            state_.set_request_clients(id, share);
        } else {
            state_.add_request(make_chain_request(id, scenario_.ingress, scenario_.chain, share,
                                                  scenario_.use_case.delay_bound_ms));
            next_request_id_ = id + 1;
        }
    }
}

double Environment::normal_draw() {
    // Box-Muller on the raw engine keeps episode streams identical across
    // standard libraries, which distribution classes do not guarantee.
    if (have_spare_normal_) {
        have_spare_normal_ = false;
        return spare_normal_;
    }
    const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_normal_ = radius * std::sin(angle);
    have_spare_normal_ = true;
    return radius * std::cos(angle);
}

void Environment::refresh_actual_loads() {
    for (const auto& id : state_.live_instances()) {
        const double shock = std::clamp(normal_draw(), -3.0, 3.0);
        const double factor = std::max(0.0, 1.0 + scenario_.burst_sigma * shock);
        actual_[id] = state_.instance_profiled_load(id) * factor;
    }
}

int Environment::reap_idle() {
    std::vector<InstanceId> stale;
    for (const auto& id : state_.live_instances()) {
        if (state_.mapping_count(id) > 0) continue;
        if (state_.clock() - state_.placement(id).last_active_at >= scenario_.idle_timeout)
            stale.push_back(id);
    }
    for (const auto& id : stale) {
        state_.apply_destroy(id);
        actual_.erase(id);
    }
    return static_cast<int>(stale.size());
}

std::optional<RequestId> Environment::oldest_pending() const {
    for (RequestId id : state_.request_ids())
        if (!state_.fully_mapped(id)) return id;
    return std::nullopt;
}

bool Environment::done() const { return state_.clock() >= scenario_.total_dwell(); }

std::vector<bool> Environment::valid_action_mask() const {
    std::vector<bool> mask(actions_.size(), false);
    const std::set<ServiceKind> chain_kinds(scenario_.chain.begin(), scenario_.chain.end());
    const auto pending = oldest_pending();
    const std::set<ClusterId> candidates(candidates_.begin(), candidates_.end());

    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const Action& a = actions_[i];
        switch (a.verb) {
            case Verb::Place:
                mask[i] = candidates.count(a.cluster) > 0 && chain_kinds.count(a.kind) > 0;
                break;
            case Verb::Map: {
                const auto pod = resolve_slot(state_, a.cluster, a.kind, a.slot);
                mask[i] = pending.has_value() && candidates.count(a.cluster) > 0 &&
                          scenario_.chain[static_cast<std::size_t>(a.chain_position)] == a.kind &&
                          pod.has_value() &&
                          !state_.mapped_instance(*pending, a.chain_position).has_value();
                break;
            }
            case Verb::Destroy: {
                const auto pod = resolve_slot(state_, a.cluster, a.kind, a.slot);
                mask[i] = pod.has_value() && state_.mapping_count(*pod) == 0;
                break;
            }
            case Verb::NoOp:
                mask[i] = true;
                break;
        }
    }
    return mask;
}

StepOutcome Environment::step(int action_index) {
    if (action_index < 0 || action_index >= action_count())
        throw LookupError("action index out of range");
    return step(actions_[static_cast<std::size_t>(action_index)]);
}

StepOutcome Environment::step(const Action& action) {
    StepOutcome out;
    StepInfo& info = out.info;

    // Phase 1: try the action. Guard refusals and dangling references make
    // the move invalid (penalized below) but never abort the tick.
    switch (action.verb) {
        case Verb::Place: {
            if (!std::count(candidates_.begin(), candidates_.end(), action.cluster)) {
                info.action_valid = false;
                info.refusal = "cluster outside the placement candidates";
                break;
            }
            if (auto refusal = state_.peek_place(action.cluster, action.kind, action.size)) {
                info.action_valid = false;
                info.refusal = to_string(refusal->constraint);
                break;
            }
            state_.apply_place(action.cluster, action.kind, action.size);
            break;
        }
        case Verb::Map: {
            const auto pending = oldest_pending();
            if (!pending) {
                info.action_valid = false;
                info.refusal = "no pending request to map";
                break;
            }
            const auto id = resolve_slot(state_, action.cluster, action.kind, action.slot);
            if (!id) {
                info.action_valid = false;
                info.refusal = "empty slot";
                break;
            }
            if (auto refusal = state_.peek_map(*id, *pending, action.chain_position)) {
                info.action_valid = false;
                info.refusal = to_string(refusal->constraint);
                break;
            }
            state_.apply_map(*id, *pending, action.chain_position);
            break;
        }
        case Verb::Destroy: {
            const auto id = resolve_slot(state_, action.cluster, action.kind, action.slot);
            if (!id) {
                info.action_valid = false;
                info.refusal = "empty slot";
                break;
            }
            if (auto refusal = state_.peek_destroy(*id)) {
                info.action_valid = false;
                info.refusal = to_string(refusal->constraint);
                break;
            }
            state_.apply_destroy(*id);
            actual_.erase(*id);
            break;
        }
        case Verb::NoOp:
            break;
    }

    // Phase 2: the world moves one tick.
    state_.set_clock(state_.clock() + 1);
    refresh_actual_loads();

    if (level_ + 1 < static_cast<int>(scenario_.schedule.size()) &&
        state_.clock() - level_started_at_ >=
            scenario_.schedule[static_cast<std::size_t>(level_)].dwell_ticks) {
        ++level_;
        level_started_at_ = state_.clock();
        apply_schedule_level(level_);
        info.level_changed = true;
    }
    info.level = level_;

    info.reaped_pods = reap_idle();

    // Phase 3: score the state the agent left behind.
    double capacity_sum = 0.0;
    double waste_sum = 0.0;
    for (const auto& id : state_.live_instances()) {
        const double cap = state_.placement(id).size.cpu_capacity;
        capacity_sum += cap;
        waste_sum += std::max(0.0, cap - actual_usage(id));
    }
    info.reward_resource = capacity_sum > 0 ? -(waste_sum / capacity_sum) : 0.0;

    int mapped = 0;
    bool stale_pending = false;
    for (RequestId id : state_.request_ids()) {
        if (state_.fully_mapped(id)) {
            info.mean_round_trip_ms += round_trip_ms(id);
            info.mean_overhead_ms += overhead_ms(id);
            ++mapped;
        } else {
            ++info.pending_requests;
            if (state_.clock() - state_.request_created_at(id) > scenario_.grace_ticks)
                stale_pending = true;
        }
    }
    if (mapped > 0) {
        info.mean_round_trip_ms /= mapped;
        info.mean_overhead_ms /= mapped;
    }

    double perf = -std::clamp(info.mean_overhead_ms / scenario_.use_case.delay_bound_ms, 0.0, 1.0);
    if (stale_pending) perf -= 1.0;
    if (!info.action_valid) perf -= 1.0;
    info.reward_performance = std::max(-2.0, perf);

    out.reward = scenario_.use_case.alpha * info.reward_resource +
                 scenario_.use_case.beta * info.reward_performance;
    out.done = done();
    out.observation = observe();
    return out;
}

double Environment::actual_usage(const InstanceId& id) const {
    auto it = actual_.find(id);
    if (it != actual_.end()) return it->second;
    return state_.instance_profiled_load(id);
}

double Environment::simulate_latency(RequestId request) const {
    const auto& req = state_.request(request);
    if (!state_.fully_mapped(request)) throw RequestNotFullyMapped("request not fully mapped");

    double total = 0.0;
    std::set<ClusterId> hosting;
    for (int q = 0; q < static_cast<int>(req.chain.size()); ++q) {
        const InstanceId id = *state_.mapped_instance(request, q);
        const auto& record = state_.placement(id);
        const double util = actual_usage(id) / record.size.cpu_capacity;
        const double factor =
            util <= 1.0 ? 1.0 : std::pow(util, scenario_.overload_exponent);
        total += record.size.base_delay_ms * factor;
        hosting.insert(record.cluster);
    }
    for (const auto& link : state_.derive_virtual_links(request)) total += link.delay_ms;
    total += scenario_.discovery_penalty_ms * static_cast<double>(hosting.size());
    return total;
}

double Environment::round_trip_ms(RequestId request) const {
    const auto& req = state_.request(request);
    const ClusterId head = state_.placement(*state_.mapped_instance(request, 0)).cluster;
    const ClusterId tail =
        state_.placement(*state_.mapped_instance(request, static_cast<int>(req.chain.size()) - 1))
            .cluster;
    const double entry = scenario_.topology.path_delay(scenario_.ingress, head).value_or(0.0);
    const double exit = scenario_.topology.path_delay(tail, scenario_.egress).value_or(0.0);
    return entry + simulate_latency(request) + exit;
}

double Environment::overhead_ms(RequestId request) const {
    return round_trip_ms(request) - baseline_path_ms_;
}

Observation Environment::observe() const {
    Observation obs;
    const auto clusters = scenario_.topology.cluster_ids();
    const auto kinds = scenario_.catalog.kinds();

    for (ClusterId c : clusters) {
        const double cap = scenario_.topology.cluster(c).cpu_capacity;
        obs.push_back((cap - state_.available_cpu(c)) / cap);
    }
    for (ClusterId c : clusters)
        for (const auto& k : kinds)
            obs.push_back(static_cast<double>(state_.instances_of(c, k).size()) /
                          scenario_.slots_per_cluster_kind);

    const auto pending = oldest_pending();
    for (int q = 0; q < static_cast<int>(scenario_.chain.size()); ++q) {
        const bool satisfied = !pending || state_.mapped_instance(*pending, q).has_value();
        obs.push_back(satisfied ? 1.0 : 0.0);
    }

    double mean_rtt = 0.0;
    int mapped = 0;
    for (RequestId id : state_.request_ids()) {
        if (!state_.fully_mapped(id)) continue;
        mean_rtt += round_trip_ms(id);
        ++mapped;
    }
    if (mapped > 0) mean_rtt /= mapped;
    obs.push_back(std::clamp(mean_rtt / scenario_.use_case.delay_bound_ms, 0.0, 2.0));

    obs.push_back(static_cast<double>(current_clients()) / scenario_.max_clients());
    return obs;
}

}  // namespace sfcsim
