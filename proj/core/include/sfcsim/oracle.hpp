#pragma once

#include "sfcsim/actions.hpp"
#include "sfcsim/chain_state.hpp"

namespace sfcsim {

// Which objective dominates when ranking feasible completions: fewer total
// placements (resource-prioritizing deployments) or lower expected latency
// (latency-prioritizing ones). Ties fall through to the other component, then
// to enumeration order.
enum class OracleObjective { CountThenLatency, LatencyThenCount };

struct OracleResult {
    std::size_t placement_count{};   // total live placements once provisioned
    double expected_latency_ms{};
    ProvisionPlan witness;
};

// Exhaustive enumeration of every guard-respecting way to provision
// `request` on top of `state` (mapping onto existing instances or placing
// new ones of any size), returning the optimum under `objective`.
//
// Deliberately refuses inputs beyond a small envelope (> 4 clusters, chain
// longer than 3, more than 2 sizes for a chained kind) by throwing
// EnumerationError; throws Infeasible when no completion exists. Used as
// ground truth to keep the greedy planner honest.
OracleResult brute_force_oracle(const ProvisioningState& state, RequestId request,
                                OracleObjective objective = OracleObjective::CountThenLatency);

}  // namespace sfcsim
