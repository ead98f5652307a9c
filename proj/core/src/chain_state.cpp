#include "sfcsim/chain_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfcsim/errors.hpp"

namespace sfcsim {

namespace {

// Admission comparisons tolerate this much float slack so exact-fit
// placements (e.g. eight 500s on a 4000 cluster) land on the feasible side.
constexpr double kGuardEps = 1e-9;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(const InstanceId& id) {
    return id.kind + "#" + std::to_string(id.serial);
}

ChainRequest make_chain_request(RequestId id, ClusterId from_cluster,
                                std::vector<ServiceKind> chain, int clients,
                                double delay_bound_ms) {
    if (chain.empty()) {
        throw ConfigError("request " + std::to_string(id) + " has an empty chain");
    }
    if (clients < 1) {
        throw ConfigError("request " + std::to_string(id) + " needs at least one client");
    }
    if (delay_bound_ms <= 0.0) {
        throw ConfigError("request " + std::to_string(id) + " needs a positive delay bound");
    }
    return ChainRequest{id, from_cluster, std::move(chain), clients, delay_bound_ms};
}

std::string to_string(Constraint c) {
    switch (c) {
        case Constraint::ClusterCpu: return "cluster-cpu";
        case Constraint::InstanceHeadroom: return "instance-headroom";
        case Constraint::DelayBound: return "delay-bound";
        case Constraint::MappingLiveness: return "mapping-liveness";
        case Constraint::KindMismatch: return "kind-mismatch";
        case Constraint::MappingUniqueness: return "mapping-uniqueness";
        case Constraint::LinkRoutability: return "link-routability";
        case Constraint::InstanceBusy: return "instance-busy";
    }
    throw StateError("unhandled constraint");
}

std::string to_string(const Violation& v) {
    return to_string(v.constraint) + " " + v.entity + " margin=" + fmt(v.margin);
}

ProvisioningState::ProvisioningState(Topology topology, Catalog catalog)
    : topology_(std::move(topology)), catalog_(std::move(catalog)) {}

void ProvisioningState::set_clock(Tick t) {
    if (t < clock_) {
        throw StateError("clock cannot run backwards");
    }
    clock_ = t;
}

void ProvisioningState::add_request(const ChainRequest& request) {
    if (request.chain.empty() || request.clients < 1 || request.delay_bound_ms <= 0.0) {
        throw ConfigError("malformed request " + std::to_string(request.id));
    }
    if (!topology_.has_cluster(request.from_cluster)) {
        throw LookupError("request " + std::to_string(request.id) +
                          " enters at unknown cluster " + std::to_string(request.from_cluster));
    }
    for (const ServiceKind& kind : request.chain) {
        if (!catalog_.has_kind(kind)) {
            throw LookupError("request chain references unknown kind " + kind);
        }
        catalog_.profile(kind);  // demand must be computable for every position
    }
    if (requests_.count(request.id) > 0) {
        throw StateError("request " + std::to_string(request.id) + " already registered");
    }
    RequestEntry e;
    e.request = request;
    e.created_at = clock_;
    e.mapping.resize(request.chain.size());
    requests_.emplace(request.id, std::move(e));
}

void ProvisioningState::set_request_clients(RequestId id, int clients) {
    if (clients < 1) {
        throw ConfigError("client count must be positive");
    }
    auto it = requests_.find(id);
    if (it == requests_.end()) {
        throw LookupError("unknown request " + std::to_string(id));
    }
    it->second.request.clients = clients;
}

const ProvisioningState::RequestEntry& ProvisioningState::entry(RequestId id) const {
    auto it = requests_.find(id);
    if (it == requests_.end()) {
        throw LookupError("unknown request " + std::to_string(id));
    }
    return it->second;
}

const ChainRequest& ProvisioningState::request(RequestId id) const {
    return entry(id).request;
}

Tick ProvisioningState::request_created_at(RequestId id) const {
    return entry(id).created_at;
}

std::vector<RequestId> ProvisioningState::request_ids() const {
    std::vector<RequestId> ids;
    ids.reserve(requests_.size());
    for (const auto& [id, e] : requests_) ids.push_back(id);
    return ids;
}

double ProvisioningState::position_demand(RequestId id, int position) const {
    const RequestEntry& e = entry(id);
    if (position < 0 || position >= static_cast<int>(e.request.chain.size())) {
        throw LookupError("request " + std::to_string(id) + " has no position " +
                          std::to_string(position));
    }
    return catalog_.profiled_demand(e.request.chain[position], e.request.clients);
}

InstanceId ProvisioningState::apply_place(ClusterId cluster, const ServiceKind& kind,
                                          const SizeName& size) {
    const SizeSpec& spec = catalog_.size(kind, size);  // validates kind/size
    topology_.cluster(cluster);                        // validates cluster
    if (auto v = peek_place(cluster, kind, size)) {
        throw InsufficientClusterCpu(to_string(*v));
    }
    InstanceId id{kind, next_serial_[kind]++};
    placements_.emplace(id, PlacementRecord{id, cluster, spec, clock_, clock_});
    return id;
}

std::optional<Violation> ProvisioningState::peek_place(ClusterId cluster, const ServiceKind& kind,
                                                       const SizeName& size) const {
    const SizeSpec& spec = catalog_.size(kind, size);
    double available = available_cpu(cluster);
    if (spec.cpu_capacity > available + kGuardEps) {
        return Violation{Constraint::ClusterCpu, "cluster " + std::to_string(cluster),
                         available - spec.cpu_capacity};
    }
    return std::nullopt;
}

std::optional<Violation> ProvisioningState::routability_violation(const RequestEntry& e,
                                                                  int position,
                                                                  ClusterId target) const {
    const std::string entity =
        "request " + std::to_string(e.request.id) + " position " + std::to_string(position);
    if (position == 0) {
        if (target != e.request.from_cluster &&
            !topology_.hop_delay(e.request.from_cluster, target).has_value()) {
            return Violation{Constraint::LinkRoutability, entity + " (from entry cluster)", 0.0};
        }
    } else if (e.mapping[position - 1].has_value()) {
        ClusterId prev = placement(*e.mapping[position - 1]).cluster;
        if (!topology_.can_reach_next(prev, target)) {
            return Violation{Constraint::LinkRoutability, entity + " (from predecessor)", 0.0};
        }
    }
    if (position + 1 < static_cast<int>(e.mapping.size()) &&
        e.mapping[position + 1].has_value()) {
        ClusterId next = placement(*e.mapping[position + 1]).cluster;
        if (!topology_.can_reach_next(target, next)) {
            return Violation{Constraint::LinkRoutability, entity + " (to successor)", 0.0};
        }
    }
    return std::nullopt;
}

std::optional<Violation> ProvisioningState::peek_map(const InstanceId& instance,
                                                     RequestId request, int position) const {
    const RequestEntry& e = entry(request);
    if (position < 0 || position >= static_cast<int>(e.request.chain.size())) {
        throw LookupError("request " + std::to_string(request) + " has no position " +
                          std::to_string(position));
    }
    const std::string entity =
        to_string(instance) + " for request " + std::to_string(request) + " position " +
        std::to_string(position);

    auto pit = placements_.find(instance);
    if (pit == placements_.end()) {
        return Violation{Constraint::MappingLiveness, entity, 0.0};
    }
    if (pit->second.instance.kind != e.request.chain[position]) {
        return Violation{Constraint::KindMismatch, entity, 0.0};
    }
    if (e.mapping[position].has_value()) {
        return Violation{Constraint::MappingUniqueness, entity, 0.0};
    }
    double demand = position_demand(request, position);
    double headroom = instance_headroom(instance);
    if (demand > headroom + kGuardEps) {
        return Violation{Constraint::InstanceHeadroom, entity, headroom - demand};
    }
    if (auto v = routability_violation(e, position, pit->second.cluster)) {
        return v;
    }

    // Delay budget on the hypothetical mapping: every completion of the chain
    // only adds latency, so checking the partial sum at every step guarantees
    // the bound holds whenever the chain finishes mapping.
    RequestEntry trial = e;
    trial.mapping[position] = instance;
    double latency = 0.0;
    for (const VirtualLink& link : derive_links_lenient(trial)) {
        if (link.routable) latency += link.delay_ms;
    }
    for (const auto& slot : trial.mapping) {
        if (slot) latency += placement(*slot).size.base_delay_ms;
    }
    if (latency > e.request.delay_bound_ms + kGuardEps) {
        return Violation{Constraint::DelayBound, entity, e.request.delay_bound_ms - latency};
    }
    return std::nullopt;
}

void ProvisioningState::apply_map(const InstanceId& instance, RequestId request, int position) {
    if (auto v = peek_map(instance, request, position)) {
        const std::string msg = to_string(*v);
        switch (v->constraint) {
            case Constraint::MappingLiveness: throw LookupError(msg);
            case Constraint::KindMismatch: throw KindMismatch(msg);
            case Constraint::MappingUniqueness: throw AlreadyMapped(msg);
            case Constraint::InstanceHeadroom: throw InsufficientInstanceHeadroom(msg);
            case Constraint::LinkRoutability: throw UnroutableVirtualLink(msg);
            case Constraint::DelayBound: throw DelayBoundExceeded(msg);
            default: throw StateError(msg);
        }
    }
    auto& e = requests_.at(request);
    e.mapping[position] = instance;
    placements_.at(instance).last_active_at = clock_;
}

void ProvisioningState::force_map(const InstanceId& instance, RequestId request, int position) {
    auto it = requests_.find(request);
    if (it == requests_.end()) {
        throw LookupError("unknown request " + std::to_string(request));
    }
    if (position < 0 || position >= static_cast<int>(it->second.mapping.size())) {
        throw LookupError("request " + std::to_string(request) + " has no position " +
                          std::to_string(position));
    }
    it->second.mapping[position] = instance;
}

std::optional<Violation> ProvisioningState::peek_destroy(const InstanceId& instance) const {
    if (!is_live(instance)) {
        return Violation{Constraint::MappingLiveness, to_string(instance) + " not live", 0.0};
    }
    int mappings = mapping_count(instance);
    if (mappings > 0) {
        return Violation{Constraint::InstanceBusy,
                         to_string(instance) + " has " + std::to_string(mappings) + " mappings",
                         static_cast<double>(-mappings)};
    }
    return std::nullopt;
}

void ProvisioningState::apply_destroy(const InstanceId& instance) {
    auto it = placements_.find(instance);
    if (it == placements_.end()) {
        throw LookupError("unknown or destroyed instance " + to_string(instance));
    }
    if (auto v = peek_destroy(instance); v && v->constraint == Constraint::InstanceBusy) {
        throw InstanceBusy(to_string(*v));
    }
    placements_.erase(it);
}

double ProvisioningState::available_cpu(ClusterId cluster) const {
    double capacity = topology_.cluster(cluster).cpu_capacity;
    for (const auto& [id, rec] : placements_) {
        if (rec.cluster == cluster) capacity -= rec.size.cpu_capacity;
    }
    return capacity;
}

double ProvisioningState::instance_profiled_load(const InstanceId& instance) const {
    if (!is_live(instance)) {
        throw LookupError("unknown or destroyed instance " + to_string(instance));
    }
    double load = 0.0;
    for (const auto& [rid, e] : requests_) {
        for (int q = 0; q < static_cast<int>(e.mapping.size()); ++q) {
            if (e.mapping[q] == instance) {
                load += catalog_.profiled_demand(e.request.chain[q], e.request.clients);
            }
        }
    }
    return load;
}

double ProvisioningState::instance_headroom(const InstanceId& instance) const {
    return placement(instance).size.cpu_capacity - instance_profiled_load(instance);
}

int ProvisioningState::mapping_count(const InstanceId& instance) const {
    int n = 0;
    for (const auto& [rid, e] : requests_) {
        for (const auto& slot : e.mapping) {
            if (slot == instance) ++n;
        }
    }
    return n;
}

bool ProvisioningState::is_live(const InstanceId& instance) const {
    return placements_.count(instance) > 0;
}

const PlacementRecord& ProvisioningState::placement(const InstanceId& instance) const {
    auto it = placements_.find(instance);
    if (it == placements_.end()) {
        throw LookupError("unknown or destroyed instance " + to_string(instance));
    }
    return it->second;
}

std::vector<InstanceId> ProvisioningState::live_instances() const {
    std::vector<InstanceId> out;
    out.reserve(placements_.size());
    for (const auto& [id, rec] : placements_) out.push_back(id);
    return out;
}

std::vector<InstanceId> ProvisioningState::instances_on(ClusterId cluster) const {
    std::vector<InstanceId> out;
    for (const auto& [id, rec] : placements_) {
        if (rec.cluster == cluster) out.push_back(id);
    }
    return out;
}

std::vector<InstanceId> ProvisioningState::instances_of(ClusterId cluster,
                                                        const ServiceKind& kind) const {
    std::vector<InstanceId> out;
    for (const auto& [id, rec] : placements_) {
        if (rec.cluster == cluster && id.kind == kind) out.push_back(id);
    }
    return out;
}

std::size_t ProvisioningState::placement_count() const {
    return placements_.size();
}

std::size_t ProvisioningState::placements_ever() const {
    std::size_t total = 0;
    for (const auto& [kind, next] : next_serial_) total += static_cast<std::size_t>(next);
    return total;
}

std::optional<InstanceId> ProvisioningState::mapped_instance(RequestId request,
                                                             int position) const {
    const RequestEntry& e = entry(request);
    if (position < 0 || position >= static_cast<int>(e.mapping.size())) {
        throw LookupError("request " + std::to_string(request) + " has no position " +
                          std::to_string(position));
    }
    return e.mapping[position];
}

bool ProvisioningState::fully_mapped(RequestId request) const {
    return unmapped_position_count(request) == 0;
}

int ProvisioningState::unmapped_position_count(RequestId request) const {
    const RequestEntry& e = entry(request);
    int n = 0;
    for (const auto& slot : e.mapping) {
        if (!slot) ++n;
    }
    return n;
}

std::vector<std::pair<RequestId, int>> ProvisioningState::mappings_of(
    const InstanceId& instance) const {
    std::vector<std::pair<RequestId, int>> out;
    for (const auto& [rid, e] : requests_) {
        for (int q = 0; q < static_cast<int>(e.mapping.size()); ++q) {
            if (e.mapping[q] == instance) out.emplace_back(rid, q);
        }
    }
    return out;
}

std::vector<VirtualLink> ProvisioningState::derive_links_lenient(const RequestEntry& e) const {
    std::vector<VirtualLink> out;
    for (int q = 0; q + 1 < static_cast<int>(e.mapping.size()); ++q) {
        if (!e.mapping[q] || !e.mapping[q + 1]) continue;
        if (!is_live(*e.mapping[q]) || !is_live(*e.mapping[q + 1])) continue;
        ClusterId a = placement(*e.mapping[q]).cluster;
        ClusterId b = placement(*e.mapping[q + 1]).cluster;
        VirtualLink link;
        link.from_position = q;
        link.to_position = q + 1;
        link.from_cluster = a;
        link.to_cluster = b;
        link.same_cluster = (a == b);
        auto hop = topology_.hop_delay(a, b);
        link.routable = hop.has_value();
        link.delay_ms = hop.value_or(0.0);
        out.push_back(link);
    }
    return out;
}

std::vector<VirtualLink> ProvisioningState::derive_virtual_links(RequestId request) const {
    std::vector<VirtualLink> links = derive_links_lenient(entry(request));
    for (const VirtualLink& link : links) {
        if (!link.routable) {
            throw UnroutableVirtualLink("request " + std::to_string(request) + " positions " +
                                        std::to_string(link.from_position) + "->" +
                                        std::to_string(link.to_position) +
                                        " span unlinked clusters");
        }
    }
    return links;
}

double ProvisioningState::partial_expected_latency(RequestId request) const {
    const RequestEntry& e = entry(request);
    double latency = 0.0;
    for (const auto& slot : e.mapping) {
        if (slot && is_live(*slot)) latency += placement(*slot).size.base_delay_ms;
    }
    for (const VirtualLink& link : derive_links_lenient(e)) {
        if (link.routable) latency += link.delay_ms;
    }
    return latency;
}

double ProvisioningState::expected_latency(RequestId request) const {
    if (!fully_mapped(request)) {
        throw RequestNotFullyMapped("request " + std::to_string(request) +
                                    " has unmapped chain positions");
    }
    const RequestEntry& e = entry(request);
    double latency = 0.0;
    for (const auto& slot : e.mapping) {
        latency += placement(*slot).size.base_delay_ms;
    }
    for (const VirtualLink& link : derive_virtual_links(request)) {
        latency += link.delay_ms;
    }
    return latency;
}

std::pair<std::size_t, double> ProvisioningState::objective_pair(RequestId request) const {
    return {placement_count(), expected_latency(request)};
}

std::vector<Violation> ProvisioningState::check_constraints() const {
    std::vector<Violation> out;

    for (ClusterId c : topology_.cluster_ids()) {
        double available = available_cpu(c);
        if (available < -kGuardEps) {
            out.push_back({Constraint::ClusterCpu, "cluster " + std::to_string(c), available});
        }
    }

    for (const auto& [id, rec] : placements_) {
        double headroom = instance_headroom(id);
        if (headroom < -kGuardEps) {
            out.push_back({Constraint::InstanceHeadroom, to_string(id), headroom});
        }
    }

    for (const auto& [rid, e] : requests_) {
        const std::string rname = "request " + std::to_string(rid);
        bool latency_computable = true;

        for (int q = 0; q < static_cast<int>(e.mapping.size()); ++q) {
            if (!e.mapping[q]) continue;
            if (!is_live(*e.mapping[q])) {
                out.push_back({Constraint::MappingLiveness,
                               rname + " position " + std::to_string(q) + " -> " +
                                   to_string(*e.mapping[q]),
                               0.0});
                latency_computable = false;
                continue;
            }
            if (e.mapping[q]->kind != e.request.chain[q]) {
                out.push_back({Constraint::KindMismatch,
                               rname + " position " + std::to_string(q), 0.0});
            }
        }

        if (e.mapping[0] && is_live(*e.mapping[0])) {
            ClusterId first = placement(*e.mapping[0]).cluster;
            if (first != e.request.from_cluster &&
                !topology_.hop_delay(e.request.from_cluster, first).has_value()) {
                out.push_back(
                    {Constraint::LinkRoutability, rname + " position 0 (from entry cluster)", 0.0});
            }
        }
        for (const VirtualLink& link : derive_links_lenient(e)) {
            if (!link.routable) {
                out.push_back({Constraint::LinkRoutability,
                               rname + " positions " + std::to_string(link.from_position) + "->" +
                                   std::to_string(link.to_position),
                               0.0});
                latency_computable = false;
            }
        }

        if (latency_computable) {
            double latency = partial_expected_latency(rid);
            if (latency > e.request.delay_bound_ms + kGuardEps) {
                out.push_back({Constraint::DelayBound, rname,
                               e.request.delay_bound_ms - latency});
            }
        }
    }
    return out;
}

std::string ProvisioningState::snapshot() const {
    std::ostringstream os;
    os << "clock " << clock_ << "\n";
    for (const auto& [rid, e] : requests_) {
        os << "request " << rid << " from=" << e.request.from_cluster
           << " clients=" << e.request.clients << " bound=" << fmt(e.request.delay_bound_ms)
           << " created=" << e.created_at << " chain=";
        for (std::size_t q = 0; q < e.request.chain.size(); ++q) {
            if (q > 0) os << ",";
            os << e.request.chain[q];
        }
        os << "\n";
    }
    for (const auto& [id, rec] : placements_) {
        os << "place " << to_string(id) << " cluster=" << rec.cluster << " size=" << rec.size.name
           << " cap=" << fmt(rec.size.cpu_capacity) << " placed=" << rec.placed_at
           << " active=" << rec.last_active_at << "\n";
    }
    for (const auto& [rid, e] : requests_) {
        for (int q = 0; q < static_cast<int>(e.mapping.size()); ++q) {
            if (e.mapping[q]) {
                os << "map " << rid << ":" << q << " -> " << to_string(*e.mapping[q]) << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace sfcsim
