#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfcsim {

using ServiceKind = std::string;
using SizeName = std::string;

// One deployable flavour of a service: CPU reservation and the processing
// delay it adds to a chain when unloaded.
struct SizeSpec {
    SizeName name;
    double cpu_capacity{};   // millicores reserved on the hosting cluster
    double base_delay_ms{};  // per-packet processing delay at <=100% load
};

// Linear model of how much CPU a session group of n clients drives through
// one service of a given kind.
struct DemandProfile {
    double base{};        // millicores consumed by an idle session
    double per_client{};  // additional millicores per attached client
};

// Immutable description of what can be deployed: every service kind, its
// size menu, and the per-kind client demand model.
class Catalog {
public:
    void define_size(const ServiceKind& kind, const SizeSpec& spec);
    void set_profile(const ServiceKind& kind, DemandProfile profile);

    bool has_kind(const ServiceKind& kind) const;
    bool has_size(const ServiceKind& kind, const SizeName& size) const;
    std::vector<ServiceKind> kinds() const;  // ascending

    const SizeSpec& size(const ServiceKind& kind, const SizeName& name) const;

    // Size menu for a kind ordered by capacity (ties by name) ascending.
    std::vector<SizeSpec> sizes_by_capacity(const ServiceKind& kind) const;

    // Cheapest size whose capacity covers `demand`; nullopt when even the
    // largest flavour is too small.
    std::optional<SizeSpec> smallest_covering(const ServiceKind& kind, double demand) const;

    const DemandProfile& profile(const ServiceKind& kind) const;
    double profiled_demand(const ServiceKind& kind, int clients) const;

private:
    std::map<ServiceKind, std::map<SizeName, SizeSpec>> sizes_;
    std::map<ServiceKind, DemandProfile> profiles_;
};

}  // namespace sfcsim
