#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfcsim/catalog.hpp"
#include "sfcsim/topology.hpp"

namespace sfcsim {

using RequestId = int;
using Tick = long;

// Identity of one live (or once-live) service instance. Serials count up per
// kind and are never reused, so logs stay unambiguous across destroys.
struct InstanceId {
    ServiceKind kind;
    int serial{};

    auto operator<=>(const InstanceId&) const = default;
};

std::string to_string(const InstanceId& id);  // e.g. "firewall#0"

struct PlacementRecord {
    InstanceId instance;
    ClusterId cluster{};
    SizeSpec size;
    Tick placed_at{};
    Tick last_active_at{};  // refreshed on every mapping; >= placed_at
};

// One client session group asking for a full pass through its service chain.
// `clients` drives profiled demand and may be re-pointed mid-run; mappings
// made earlier stay where they are (that is the overcommit failure mode, not
// a bug).
struct ChainRequest {
    RequestId id{};
    ClusterId from_cluster{};         // where the group's traffic enters
    std::vector<ServiceKind> chain;   // ordered service kinds to traverse
    int clients{};
    double delay_bound_ms{};
};

ChainRequest make_chain_request(RequestId id, ClusterId from_cluster,
                                std::vector<ServiceKind> chain, int clients,
                                double delay_bound_ms);

// Why a provisioning mutation was (or would be) refused, or why an audited
// state is inconsistent. Margins are signed: negative means "short by".
enum class Constraint {
    ClusterCpu,         // cluster reservation budget
    InstanceHeadroom,   // profiled demand vs instance capacity
    DelayBound,         // expected chain latency vs request bound
    MappingLiveness,    // mapping references a destroyed/unknown instance
    KindMismatch,       // instance kind differs from the chain position's
    MappingUniqueness,  // chain position already mapped
    LinkRoutability,    // consecutive chain hops lack a physical link
    InstanceBusy,       // destroy refused while mappings exist
};

std::string to_string(Constraint c);

struct Violation {
    Constraint constraint{};
    std::string entity;
    double margin{};
};

std::string to_string(const Violation& v);

// Physical route induced between two consecutive mapped chain positions.
struct VirtualLink {
    int from_position{};
    int to_position{};
    ClusterId from_cluster{};
    ClusterId to_cluster{};
    bool same_cluster{};
    bool routable{};
    double delay_ms{};  // 0 when co-located; meaningless when !routable
};

// The live provisioning picture: which instances exist where, and which
// request positions are mapped onto them. All mutations are guarded; a
// mutation either passes every admission check and applies atomically, or
// throws a GuardError (peek_* twins report the refusal as a value instead).
// Demand re-profiling (set_request_clients) is deliberately unguarded: it
// models external load drift, which provisioning never gets to veto.
class ProvisioningState {
public:
    ProvisioningState(Topology topology, Catalog catalog);

    const Topology& topology() const { return topology_; }
    const Catalog& catalog() const { return catalog_; }

    Tick clock() const { return clock_; }
    void set_clock(Tick t);

    // --- requests -----------------------------------------------------
    void add_request(const ChainRequest& request);
    void set_request_clients(RequestId id, int clients);
    const ChainRequest& request(RequestId id) const;
    Tick request_created_at(RequestId id) const;
    std::vector<RequestId> request_ids() const;  // ascending
    double position_demand(RequestId id, int position) const;

    // --- guarded mutations ---------------------------------------------
    InstanceId apply_place(ClusterId cluster, const ServiceKind& kind, const SizeName& size);
    void apply_map(const InstanceId& instance, RequestId request, int position);
    void apply_destroy(const InstanceId& instance);

    // Non-throwing admission checks; nullopt means the mutation would apply.
    std::optional<Violation> peek_place(ClusterId cluster, const ServiceKind& kind,
                                        const SizeName& size) const;
    std::optional<Violation> peek_map(const InstanceId& instance, RequestId request,
                                      int position) const;
    std::optional<Violation> peek_destroy(const InstanceId& instance) const;

    // Test/repair hook: writes a mapping with every guard bypassed, including
    // liveness. Exists so audits can be exercised on broken states; simulation
    // code must never call it.
    void force_map(const InstanceId& instance, RequestId request, int position);

    // --- resource queries ----------------------------------------------
    double available_cpu(ClusterId cluster) const;
    double instance_profiled_load(const InstanceId& instance) const;
    double instance_headroom(const InstanceId& instance) const;  // signed
    int mapping_count(const InstanceId& instance) const;

    // --- placement queries ----------------------------------------------
    bool is_live(const InstanceId& instance) const;
    const PlacementRecord& placement(const InstanceId& instance) const;
    std::vector<InstanceId> live_instances() const;  // sorted (kind, serial)
    std::vector<InstanceId> instances_on(ClusterId cluster) const;
    std::vector<InstanceId> instances_of(ClusterId cluster, const ServiceKind& kind) const;
    std::size_t placement_count() const;
    // Every placement ever made, including instances destroyed since.
    std::size_t placements_ever() const;

    // --- mapping queries --------------------------------------------------
    std::optional<InstanceId> mapped_instance(RequestId request, int position) const;
    bool fully_mapped(RequestId request) const;
    int unmapped_position_count(RequestId request) const;
    std::vector<std::pair<RequestId, int>> mappings_of(const InstanceId& instance) const;

    // --- latency ----------------------------------------------------------
    // Both count base processing delays plus physical link delays between
    // consecutive mapped positions; no load or discovery effects (those are
    // simulation-time, not admission-time).
    double expected_latency(RequestId request) const;          // full mapping required
    double partial_expected_latency(RequestId request) const;  // mapped positions only

    std::vector<VirtualLink> derive_virtual_links(RequestId request) const;

    std::pair<std::size_t, double> objective_pair(RequestId request) const;

    // Full constraint audit; empty on any state reached purely through the
    // guarded mutations above (with demands fixed).
    std::vector<Violation> check_constraints() const;

    // Line-oriented, sorted, diff-friendly dump of the whole state.
    std::string snapshot() const;

private:
    struct RequestEntry {
        ChainRequest request;
        Tick created_at{};
        std::vector<std::optional<InstanceId>> mapping;  // one slot per position
    };

    const RequestEntry& entry(RequestId id) const;
    std::vector<VirtualLink> derive_links_lenient(const RequestEntry& e) const;
    std::optional<Violation> routability_violation(const RequestEntry& e, int position,
                                                   ClusterId target_cluster) const;

    Topology topology_;
    Catalog catalog_;
    std::map<InstanceId, PlacementRecord> placements_;
    std::map<RequestId, RequestEntry> requests_;
    std::map<ServiceKind, int> next_serial_;
    Tick clock_{0};
};

}  // namespace sfcsim
