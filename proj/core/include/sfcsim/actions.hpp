#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfcsim/chain_state.hpp"

namespace sfcsim {

enum class Verb { Place, Map, Destroy, NoOp };

std::string to_string(Verb v);

// One provisioning decision. Map and Destroy address an instance indirectly
// as (cluster, kind, slot) where slot indexes the live instances of that kind
// on that cluster in serial order — this keeps the action space fixed-size
// for learning agents regardless of which serials happen to be live.
struct Action {
    Verb verb{Verb::NoOp};
    ClusterId cluster{};
    ServiceKind kind;
    SizeName size;           // Place only
    int slot{};              // Map / Destroy
    int chain_position{};    // Map only

    bool operator==(const Action&) const = default;
};

std::string to_string(const Action& a);

// The instance a Map/Destroy action currently addresses; nullopt when the
// slot is empty.
std::optional<InstanceId> resolve_slot(const ProvisioningState& state, ClusterId cluster,
                                       const ServiceKind& kind, int slot);

// Applies one action on behalf of `request` (only Map needs it). Guard
// failures propagate from the underlying mutation; NoOp does nothing.
void apply_action(ProvisioningState& state, const Action& action,
                  std::optional<RequestId> request);

// A fully worked-out provisioning recipe for one request; applying the steps
// in order to the state the plan was computed from maps every chain position
// without tripping any guard.
struct ProvisionPlan {
    RequestId request{};
    std::vector<Action> steps;
};

}  // namespace sfcsim
