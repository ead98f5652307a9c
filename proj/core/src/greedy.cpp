#include "sfcsim/greedy.hpp"

#include <algorithm>

#include "sfcsim/errors.hpp"

namespace sfcsim {

namespace {

// Cluster ids in ascending order rotated so the scan begins at `start`
// (or at the next larger id when `start` is absent), wrapping around.
std::vector<ClusterId> rotation_from(std::vector<ClusterId> ids, ClusterId start) {
    auto pivot = std::lower_bound(ids.begin(), ids.end(), start);
    std::rotate(ids.begin(), pivot == ids.end() ? ids.begin() : pivot, ids.end());
    return ids;
}

int slot_of(const ProvisioningState& state, const InstanceId& instance) {
    const PlacementRecord& rec = state.placement(instance);
    std::vector<InstanceId> peers = state.instances_of(rec.cluster, instance.kind);
    auto it = std::find(peers.begin(), peers.end(), instance);
    return static_cast<int>(it - peers.begin());
}

}  // namespace

ProvisionPlan greedy_provision(const ProvisioningState& state, RequestId request) {
    const ChainRequest& req = state.request(request);
    const std::vector<ClusterId> all_clusters = state.topology().cluster_ids();

    ProvisioningState trial = state;
    ProvisionPlan plan{request, {}};

    // Every position scans the same rotation: ascending cluster ids starting
    // at the request's anchoring cluster, so chains co-locate there until it
    // runs out of room.
    const std::vector<ClusterId> scan = rotation_from(all_clusters, req.from_cluster);
    ClusterId prev_cluster = req.from_cluster;

    for (int q = 0; q < static_cast<int>(req.chain.size()); ++q) {
        if (trial.mapped_instance(request, q).has_value()) {
            // resume a half-provisioned request without disturbing done work
            prev_cluster = trial.placement(*trial.mapped_instance(request, q)).cluster;
            continue;
        }

        const ServiceKind& kind = req.chain[q];
        std::optional<InstanceId> chosen;

        // Mapping pass: every candidate cluster's live instances, in slot
        // order, before any thought of placing.
        for (ClusterId c : scan) {
            if (!state.topology().can_reach_next(prev_cluster, c)) continue;
            for (const InstanceId& id : trial.instances_of(c, kind)) {
                if (!trial.peek_map(id, request, q)) {
                    chosen = id;
                    break;
                }
            }
            if (chosen) break;
        }

        // Placement pass: smallest size covering this position's demand, on
        // the first candidate cluster with the CPU budget for it — provided
        // a mapping onto the fresh instance would actually be admitted.
        if (!chosen) {
            double demand = trial.position_demand(request, q);
            std::optional<SizeSpec> size = trial.catalog().smallest_covering(kind, demand);
            if (size) {
                for (ClusterId c : scan) {
                    if (!state.topology().can_reach_next(prev_cluster, c)) continue;
                    if (trial.peek_place(c, kind, size->name)) continue;
                    InstanceId fresh = trial.apply_place(c, kind, size->name);
                    if (trial.peek_map(fresh, request, q)) {
                        trial.apply_destroy(fresh);  // e.g. delay budget says no
                        continue;
                    }
                    plan.steps.push_back(Action{Verb::Place, c, kind, size->name, 0, 0});
                    chosen = fresh;
                    break;
                }
            }
        }

        if (!chosen) {
            throw Infeasible("request " + std::to_string(request) + " position " +
                             std::to_string(q) + " (" + kind +
                             "): no candidate cluster can map or host it");
        }

        Action map_action{Verb::Map, trial.placement(*chosen).cluster, kind, "",
                          slot_of(trial, *chosen), q};
        trial.apply_map(*chosen, request, q);
        plan.steps.push_back(map_action);

        prev_cluster = trial.placement(*chosen).cluster;
    }

    return plan;
}

Action heuristic_suggest(const ProvisioningState& state, std::optional<RequestId> pending,
                         Tick idle_timeout) {
    if (pending && !state.fully_mapped(*pending)) {
        try {
            ProvisionPlan plan = greedy_provision(state, *pending);
            if (!plan.steps.empty()) return plan.steps.front();
        } catch (const Infeasible&) {
            // nothing constructive to do for this request; fall through
        }
    }

    std::optional<InstanceId> stalest;
    Tick stalest_age = idle_timeout - 1;
    for (const InstanceId& id : state.live_instances()) {
        if (state.mapping_count(id) > 0) continue;
        Tick age = state.clock() - state.placement(id).last_active_at;
        if (age > stalest_age) {
            stalest_age = age;
            stalest = id;
        }
    }
    if (stalest) {
        const PlacementRecord& rec = state.placement(*stalest);
        int slot = 0;
        for (const InstanceId& peer : state.instances_of(rec.cluster, stalest->kind)) {
            if (peer == *stalest) break;
            ++slot;
        }
        return Action{Verb::Destroy, rec.cluster, stalest->kind, "", slot, 0};
    }

    return Action{};  // NoOp
}

}  // namespace sfcsim
