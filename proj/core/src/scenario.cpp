#include "sfcsim/scenario.hpp"

#include <algorithm>
#include <set>

#include "sfcsim/errors.hpp"

namespace sfcsim {

Tick Scenario::total_dwell() const {
    Tick total = 0;
    for (const auto& level : schedule) total += level.dwell_ticks;
    return total;
}

int Scenario::max_clients() const {
    int most = 0;
    for (const auto& level : schedule) most = std::max(most, level.clients);
    return most;
}

std::vector<ClusterId> Scenario::placement_candidates() const {
    std::set<ClusterId> reachable{ingress};
    std::set<ClusterId> frontier{ingress};
    for (std::size_t hop = 0; hop < chain.size() && !frontier.empty(); ++hop) {
        std::set<ClusterId> next;
        for (ClusterId c : frontier) {
            for (ClusterId n : topology.lookup_candidates(c)) {
                if (reachable.insert(n).second) next.insert(n);
            }
        }
        frontier = std::move(next);
    }
    return {reachable.begin(), reachable.end()};
}

void Scenario::validate() const {
    if (name.empty()) throw ConfigError("scenario needs a name");
    if (topology.cluster_count() == 0) throw ConfigError("scenario needs at least one cluster");
    if (!topology.has_cluster(ingress)) throw ConfigError("ingress cluster does not exist");
    if (!topology.has_cluster(egress)) throw ConfigError("egress cluster does not exist");
    if (chain.empty()) throw ConfigError("scenario needs a non-empty chain");
    for (const auto& kind : chain) {
        if (!catalog.has_kind(kind)) throw ConfigError("chain kind has no sizes: " + kind);
        catalog.profile(kind);  // throws when the demand profile is missing
    }
    if (use_case.alpha < 0 || use_case.beta < 0 || use_case.alpha + use_case.beta <= 0)
        throw ConfigError("reward weights must be non-negative and not both zero");
    if (use_case.delay_bound_ms <= 0) throw ConfigError("delay bound must be positive");
    if (schedule.empty()) throw ConfigError("scenario needs a client schedule");
    int previous_groups = 0;
    for (const auto& level : schedule) {
        if (level.clients <= 0) throw ConfigError("schedule clients must be positive");
        if (level.groups <= 0) throw ConfigError("schedule groups must be positive");
        if (level.clients < level.groups)
            throw ConfigError("every group needs at least one client");
        if (level.dwell_ticks <= 0) throw ConfigError("schedule dwell must be positive");
        if (level.groups < previous_groups) throw ConfigError("group counts must never shrink");
        previous_groups = level.groups;
    }
    if (idle_timeout <= 0) throw ConfigError("idle timeout must be positive");
    if (burst_sigma < 0) throw ConfigError("burst sigma must be non-negative");
    if (discovery_penalty_ms < 0) throw ConfigError("discovery penalty must be non-negative");
    if (overload_exponent < 1) throw ConfigError("overload exponent must be at least 1");
    if (grace_ticks < 0) throw ConfigError("grace ticks must be non-negative");
    if (slots_per_cluster_kind <= 0) throw ConfigError("slots per cluster kind must be positive");
}

}  // namespace sfcsim
