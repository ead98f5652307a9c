#include "sfcsim/catalog.hpp"

#include <algorithm>

#include "sfcsim/errors.hpp"

namespace sfcsim {

void Catalog::define_size(const ServiceKind& kind, const SizeSpec& spec) {
    if (kind.empty() || spec.name.empty()) {
        throw ConfigError("service kind and size name must be non-empty");
    }
    if (spec.cpu_capacity <= 0.0 || spec.base_delay_ms < 0.0) {
        throw ConfigError("size " + kind + "/" + spec.name + " has invalid capacity or delay");
    }
    auto [it, inserted] = sizes_[kind].emplace(spec.name, spec);
    if (!inserted) {
        throw StateError("size " + kind + "/" + spec.name + " already defined");
    }
}

void Catalog::set_profile(const ServiceKind& kind, DemandProfile profile) {
    if (profile.base < 0.0 || profile.per_client < 0.0) {
        throw ConfigError("demand profile for " + kind + " must be non-negative");
    }
    profiles_[kind] = profile;
}

bool Catalog::has_kind(const ServiceKind& kind) const {
    return sizes_.count(kind) > 0;
}

bool Catalog::has_size(const ServiceKind& kind, const SizeName& size) const {
    auto it = sizes_.find(kind);
    return it != sizes_.end() && it->second.count(size) > 0;
}

std::vector<ServiceKind> Catalog::kinds() const {
    std::vector<ServiceKind> out;
    out.reserve(sizes_.size());
    for (const auto& [kind, menu] : sizes_) out.push_back(kind);
    return out;
}

const SizeSpec& Catalog::size(const ServiceKind& kind, const SizeName& name) const {
    auto kit = sizes_.find(kind);
    if (kit == sizes_.end()) throw LookupError("unknown service kind " + kind);
    auto sit = kit->second.find(name);
    if (sit == kit->second.end()) throw LookupError("unknown size " + kind + "/" + name);
    return sit->second;
}

std::vector<SizeSpec> Catalog::sizes_by_capacity(const ServiceKind& kind) const {
    auto kit = sizes_.find(kind);
    if (kit == sizes_.end()) throw LookupError("unknown service kind " + kind);
    std::vector<SizeSpec> menu;
    menu.reserve(kit->second.size());
    for (const auto& [name, spec] : kit->second) menu.push_back(spec);
    std::sort(menu.begin(), menu.end(), [](const SizeSpec& a, const SizeSpec& b) {
        if (a.cpu_capacity != b.cpu_capacity) return a.cpu_capacity < b.cpu_capacity;
        return a.name < b.name;
    });
    return menu;
}

std::optional<SizeSpec> Catalog::smallest_covering(const ServiceKind& kind, double demand) const {
    for (const SizeSpec& spec : sizes_by_capacity(kind)) {
        if (spec.cpu_capacity >= demand) return spec;
    }
    return std::nullopt;
}

const DemandProfile& Catalog::profile(const ServiceKind& kind) const {
    auto it = profiles_.find(kind);
    if (it == profiles_.end()) throw LookupError("no demand profile for " + kind);
    return it->second;
}

double Catalog::profiled_demand(const ServiceKind& kind, int clients) const {
    if (clients < 0) throw ConfigError("client count cannot be negative");
    const DemandProfile& p = profile(kind);
    return p.base + p.per_client * static_cast<double>(clients);
}

}  // namespace sfcsim
