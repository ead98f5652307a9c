#pragma once

#include <optional>

#include "sfcsim/actions.hpp"
#include "sfcsim/chain_state.hpp"

namespace sfcsim {

// Map-first greedy provisioning. For each chain position in order it tries to
// map onto a live instance with enough profiled headroom before ever placing
// a new one, so the total placement count stays minimal; when every mapping
// attempt fails it places the smallest size that covers the position's
// demand and maps onto it.
//
// Cluster scan order: the walk starts at the request's entry cluster and
// rotates through cluster ids ascending with wrap-around; each subsequent
// position resumes the rotation at the successor of the cluster chosen for
// the previous position (the loop never resets). Only clusters that are
// lookup candidates of the previous hop are considered at all.
//
// Throws Infeasible when some position can neither map nor place anywhere.
// The input state is never mutated.
ProvisionPlan greedy_provision(const ProvisioningState& state, RequestId request);

// The next single step a greedy operator would take: the first step of the
// plan for `pending` when one is given and feasible, otherwise a Destroy of
// the longest-idle unmapped instance at least idle_timeout ticks stale,
// otherwise NoOp.
Action heuristic_suggest(const ProvisioningState& state, std::optional<RequestId> pending,
                         Tick idle_timeout);

}  // namespace sfcsim
