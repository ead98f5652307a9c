#include "sfcsim/topology.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "sfcsim/errors.hpp"

namespace sfcsim {

std::string to_string(Affiliation a) {
    switch (a) {
        case Affiliation::HealthcareInstitution: return "healthcare";
        case Affiliation::ResearchCentre: return "research";
        case Affiliation::Remote: return "remote";
    }
    throw ConfigError("unhandled affiliation");
}

Affiliation affiliation_from_string(const std::string& s) {
    if (s == "healthcare") return Affiliation::HealthcareInstitution;
    if (s == "research") return Affiliation::ResearchCentre;
    if (s == "remote") return Affiliation::Remote;
    throw ConfigError("unknown affiliation '" + s + "'");
}

void Topology::add_cluster(ClusterId id, double cpu_capacity, Affiliation affiliation) {
    if (cpu_capacity <= 0.0) {
        throw ConfigError("cluster " + std::to_string(id) + " needs positive cpu capacity");
    }
    auto [it, inserted] = clusters_.emplace(id, Cluster{id, cpu_capacity, affiliation});
    if (!inserted) {
        throw StateError("cluster " + std::to_string(id) + " already defined");
    }
}

void Topology::add_link(ClusterId from, ClusterId to, double delay_ms) {
    if (!has_cluster(from) || !has_cluster(to)) {
        throw LookupError("link " + std::to_string(from) + "->" + std::to_string(to) +
                          " references an unknown cluster");
    }
    if (from == to) {
        throw ConfigError("self-links are implicit and cost nothing");
    }
    if (delay_ms < 0.0) {
        throw ConfigError("link delay must be non-negative");
    }
    auto [it, inserted] = links_[from].emplace(to, delay_ms);
    if (!inserted) {
        throw StateError("link " + std::to_string(from) + "->" + std::to_string(to) +
                         " already defined");
    }
}

bool Topology::has_cluster(ClusterId id) const {
    return clusters_.count(id) > 0;
}

const Cluster& Topology::cluster(ClusterId id) const {
    auto it = clusters_.find(id);
    if (it == clusters_.end()) {
        throw LookupError("unknown cluster " + std::to_string(id));
    }
    return it->second;
}

std::vector<ClusterId> Topology::cluster_ids() const {
    std::vector<ClusterId> ids;
    ids.reserve(clusters_.size());
    for (const auto& [id, c] : clusters_) ids.push_back(id);
    return ids;
}

std::size_t Topology::cluster_count() const {
    return clusters_.size();
}

std::optional<double> Topology::hop_delay(ClusterId from, ClusterId to) const {
    if (from == to) return 0.0;
    auto fit = links_.find(from);
    if (fit == links_.end()) return std::nullopt;
    auto tit = fit->second.find(to);
    if (tit == fit->second.end()) return std::nullopt;
    return tit->second;
}

std::vector<ClusterId> Topology::out_neighbors(ClusterId from) const {
    std::vector<ClusterId> out;
    auto fit = links_.find(from);
    if (fit == links_.end()) return out;
    out.reserve(fit->second.size());
    for (const auto& [to, d] : fit->second) out.push_back(to);
    return out;
}

std::vector<ClusterId> Topology::lookup_candidates(ClusterId from) const {
    if (!has_cluster(from)) {
        throw LookupError("unknown cluster " + std::to_string(from));
    }
    std::vector<ClusterId> cands = out_neighbors(from);
    cands.push_back(from);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

bool Topology::can_reach_next(ClusterId from, ClusterId to) const {
    return from == to || hop_delay(from, to).has_value();
}

std::optional<double> Topology::path_delay(ClusterId from, ClusterId to) const {
    if (!has_cluster(from) || !has_cluster(to)) {
        throw LookupError("path query references an unknown cluster");
    }
    if (from == to) return 0.0;

    std::map<ClusterId, double> dist;
    using Entry = std::pair<double, ClusterId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    frontier.emplace(0.0, from);
    dist[from] = 0.0;

    while (!frontier.empty()) {
        auto [d, at] = frontier.top();
        frontier.pop();
        if (at == to) return d;
        if (d > dist[at]) continue;
        auto lit = links_.find(at);
        if (lit == links_.end()) continue;
        for (const auto& [next, w] : lit->second) {
            double nd = d + w;
            auto dit = dist.find(next);
            if (dit == dist.end() || nd < dit->second) {
                dist[next] = nd;
                frontier.emplace(nd, next);
            }
        }
    }
    return std::nullopt;
}

}  // namespace sfcsim
