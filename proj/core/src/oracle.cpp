#include "sfcsim/oracle.hpp"

#include <algorithm>

#include "sfcsim/errors.hpp"

namespace sfcsim {

namespace {

struct BestSolution {
    bool found{false};
    std::size_t count{};
    double latency{};
    ProvisionPlan plan;
};

bool improves(OracleObjective objective, std::size_t count, double latency,
              const BestSolution& best) {
    if (!best.found) return true;
    if (objective == OracleObjective::CountThenLatency) {
        if (count != best.count) return count < best.count;
        return latency < best.latency;
    }
    if (latency != best.latency) return latency < best.latency;
    return count < best.count;
}

int slot_of(const ProvisioningState& state, ClusterId cluster, const InstanceId& id) {
    auto peers = state.instances_of(cluster, id.kind);
    auto it = std::find(peers.begin(), peers.end(), id);
    return static_cast<int>(it - peers.begin());
}

void search(const ProvisioningState& state, RequestId request, int position,
            ProvisionPlan& partial, BestSolution& best, OracleObjective objective) {
    const auto& req = state.request(request);
    const int chain_length = static_cast<int>(req.chain.size());
    if (position == chain_length) {
        const auto [count, latency] = state.objective_pair(request);
        if (improves(objective, count, latency, best)) {
            best.found = true;
            best.count = count;
            best.latency = latency;
            best.plan = partial;
        }
        return;
    }
    if (state.mapped_instance(request, position)) {
        search(state, request, position + 1, partial, best, objective);
        return;
    }

    const ServiceKind& kind = req.chain[static_cast<std::size_t>(position)];

    // Branch 1: map onto an existing instance of the right kind.
    for (const auto& id : state.live_instances()) {
        if (id.kind != kind) continue;
        if (state.peek_map(id, request, position)) continue;
        ProvisioningState next = state;
        next.apply_map(id, request, position);
        const auto& record = state.placement(id);
        partial.steps.push_back(Action{Verb::Map, record.cluster, id.kind, "",
                                       slot_of(state, record.cluster, id), position});
        search(next, request, position + 1, partial, best, objective);
        partial.steps.pop_back();
    }

    // Branch 2: place a fresh instance (every cluster x every size), then map it.
    for (ClusterId cluster : state.topology().cluster_ids()) {
        for (const auto& size : state.catalog().sizes_by_capacity(kind)) {
            if (state.peek_place(cluster, kind, size.name)) continue;
            ProvisioningState next = state;
            const InstanceId fresh = next.apply_place(cluster, kind, size.name);
            if (next.peek_map(fresh, request, position)) continue;
            next.apply_map(fresh, request, position);
            partial.steps.push_back(Action{Verb::Place, cluster, kind, size.name, 0, 0});
            partial.steps.push_back(Action{Verb::Map, cluster, kind, "",
                                           slot_of(next, cluster, fresh), position});
            search(next, request, position + 1, partial, best, objective);
            partial.steps.pop_back();
            partial.steps.pop_back();
        }
    }
}

}  // namespace

OracleResult brute_force_oracle(const ProvisioningState& state, RequestId request,
                                OracleObjective objective) {
    const auto& req = state.request(request);
    if (state.topology().cluster_count() > 4)
        throw EnumerationError("oracle refuses topologies beyond 4 clusters");
    if (req.chain.size() > 3)
        throw EnumerationError("oracle refuses chains longer than 3");
    for (const auto& kind : req.chain) {
        if (state.catalog().sizes_by_capacity(kind).size() > 2)
            throw EnumerationError("oracle refuses kinds with more than 2 sizes");
    }

    BestSolution best;
    ProvisionPlan partial{request, {}};
    search(state, request, 0, partial, best, objective);
    if (!best.found) throw Infeasible("no feasible provisioning for request");

    OracleResult result;
    result.placement_count = best.count;
    result.expected_latency_ms = best.latency;
    result.witness = best.plan;
    result.witness.request = request;
    return result;
}

}  // namespace sfcsim
