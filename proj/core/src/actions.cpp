#include "sfcsim/actions.hpp"

#include "sfcsim/errors.hpp"

namespace sfcsim {

std::string to_string(Verb v) {
    switch (v) {
        case Verb::Place: return "place";
        case Verb::Map: return "map";
        case Verb::Destroy: return "destroy";
        case Verb::NoOp: return "noop";
    }
    throw StateError("unhandled verb");
}

std::string to_string(const Action& a) {
    switch (a.verb) {
        case Verb::Place:
            return "place c" + std::to_string(a.cluster) + " " + a.kind + "/" + a.size;
        case Verb::Map:
            return "map c" + std::to_string(a.cluster) + " " + a.kind + "[" +
                   std::to_string(a.slot) + "] -> position " + std::to_string(a.chain_position);
        case Verb::Destroy:
            return "destroy c" + std::to_string(a.cluster) + " " + a.kind + "[" +
                   std::to_string(a.slot) + "]";
        case Verb::NoOp:
            return "noop";
    }
    throw StateError("unhandled verb");
}

std::optional<InstanceId> resolve_slot(const ProvisioningState& state, ClusterId cluster,
                                       const ServiceKind& kind, int slot) {
    if (slot < 0) return std::nullopt;
    std::vector<InstanceId> live = state.instances_of(cluster, kind);
    if (slot >= static_cast<int>(live.size())) return std::nullopt;
    return live[slot];
}

void apply_action(ProvisioningState& state, const Action& action,
                  std::optional<RequestId> request) {
    switch (action.verb) {
        case Verb::NoOp:
            return;
        case Verb::Place:
            state.apply_place(action.cluster, action.kind, action.size);
            return;
        case Verb::Map: {
            if (!request) {
                throw StateError("map action needs a target request");
            }
            auto instance = resolve_slot(state, action.cluster, action.kind, action.slot);
            if (!instance) {
                throw LookupError("map action addresses an empty slot: " + to_string(action));
            }
            state.apply_map(*instance, *request, action.chain_position);
            return;
        }
        case Verb::Destroy: {
            auto instance = resolve_slot(state, action.cluster, action.kind, action.slot);
            if (!instance) {
                throw LookupError("destroy action addresses an empty slot: " + to_string(action));
            }
            state.apply_destroy(*instance);
            return;
        }
    }
}

}  // namespace sfcsim
