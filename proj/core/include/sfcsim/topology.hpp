#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfcsim {

using ClusterId = int;

// Who operates a cluster. Purely descriptive: placement policy is expressed
// through link topology, not affiliation.
enum class Affiliation { HealthcareInstitution, ResearchCentre, Remote };

std::string to_string(Affiliation a);
Affiliation affiliation_from_string(const std::string& s);

struct Cluster {
    ClusterId id{};
    double cpu_capacity{};  // millicores
    Affiliation affiliation{Affiliation::HealthcareInstitution};
};

// Directed multi-cluster fabric: clusters with CPU budgets, links with
// propagation delays. Links are one-way; add both directions for a
// symmetric pair.
class Topology {
public:
    void add_cluster(ClusterId id, double cpu_capacity,
                     Affiliation affiliation = Affiliation::HealthcareInstitution);
    void add_link(ClusterId from, ClusterId to, double delay_ms);

    bool has_cluster(ClusterId id) const;
    const Cluster& cluster(ClusterId id) const;
    std::vector<ClusterId> cluster_ids() const;  // ascending
    std::size_t cluster_count() const;

    // Delay of the direct link from->to; nullopt when absent. Same-cluster
    // traffic costs nothing.
    std::optional<double> hop_delay(ClusterId from, ClusterId to) const;

    std::vector<ClusterId> out_neighbors(ClusterId from) const;  // ascending

    // Clusters a service running on `from` can hand traffic to next: itself
    // plus every out-neighbor. This is the reachability rule every chain
    // segment must respect.
    std::vector<ClusterId> lookup_candidates(ClusterId from) const;
    bool can_reach_next(ClusterId from, ClusterId to) const;

    // Cheapest routed delay from->to (Dijkstra over link delays), 0 when
    // from == to, nullopt when unreachable.
    std::optional<double> path_delay(ClusterId from, ClusterId to) const;

private:
    std::map<ClusterId, Cluster> clusters_;
    std::map<ClusterId, std::map<ClusterId, double>> links_;
};

}  // namespace sfcsim
