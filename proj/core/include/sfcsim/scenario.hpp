#pragma once

#include <string>
#include <vector>

#include "sfcsim/catalog.hpp"
#include "sfcsim/chain_state.hpp"
#include "sfcsim/topology.hpp"

namespace sfcsim {

// One rung of the client-load ladder: `clients` total clients spread evenly
// over `groups` independent chain requests, held for `dwell_ticks` ticks.
// Group counts never shrink between levels; existing groups are re-profiled
// in place and extra groups arrive as fresh requests.
struct ScheduleLevel {
    int clients{};
    int groups{};
    int dwell_ticks{};
};

// Weighting and service expectations of the deployment's use case. alpha
// scales the resource half of the reward, beta the performance half.
struct UseCase {
    std::string name;
    double alpha{0.7};
    double beta{0.3};
    double delay_bound_ms{10.0};
    double send_rate_min_kbps{0.0};  // descriptive only
    double send_rate_max_kbps{0.0};
};

struct Scenario {
    std::string name;
    Topology topology;
    Catalog catalog;
    std::vector<ServiceKind> chain;
    UseCase use_case;
    ClusterId ingress{1};  // clients enter here; chain heads anchor to it
    ClusterId egress{1};   // responses leave here

    std::vector<ScheduleLevel> schedule;

    Tick idle_timeout{20};           // unmapped pods are reclaimed after this
    double burst_sigma{0.15};        // relative load noise per pod per tick
    double discovery_penalty_ms{0.4};  // lookup cost per distinct hosting cluster
    double overload_exponent{2.0};   // processing penalty growth past 100% load
    Tick grace_ticks{5};             // pending requests older than this hurt reward
    int slots_per_cluster_kind{4};   // addressable pods per (cluster, kind)
    unsigned long base_seed{1};

    Tick total_dwell() const;
    int max_clients() const;

    // Clusters a chain anchored at the ingress can ever legally touch:
    // the candidate closure of the ingress, chain-length hops deep.
    std::vector<ClusterId> placement_candidates() const;

    // Throws ConfigError when the pieces do not fit together.
    void validate() const;
};

}  // namespace sfcsim
