#include "sfcsim/scenario_config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sfcsim/errors.hpp"

namespace sfcsim {

namespace {

using nlohmann::json;

// --- builtin deployments ----------------------------------------------------
//
// Three digital-health deployments over the same three-cluster fabric shape:
// two hospital-side clusters joined by a 1 ms backbone and one research
// cluster whose reachability depends on the deployment's sharing policy.

constexpr const char* kEhrJson = R"json({
  "name": "ehr",
  "use_case": {
    "name": "electronic-health-records",
    "alpha": 0.7,
    "beta": 0.3,
    "delay_bound_ms": 10.0,
    "send_rate_kbps": [1, 100]
  },
  "clusters": [
    {"id": 1, "cpu": 4000, "affiliation": "healthcare"},
    {"id": 2, "cpu": 4000, "affiliation": "healthcare"},
    {"id": 3, "cpu": 4000, "affiliation": "research"}
  ],
  "links": [
    {"from": 1, "to": 2, "delay_ms": 1.0},
    {"from": 2, "to": 1, "delay_ms": 1.0}
  ],
  "ingress": 1,
  "egress": 2,
  "chain": ["firewall", "encryption"],
  "services": {
    "firewall": {
      "sizes": [
        {"name": "small", "cpu": 500, "delay_ms": 0.3},
        {"name": "large", "cpu": 2000, "delay_ms": 0.3}
      ],
      "demand": {"base": 75, "per_client": 42.5}
    },
    "encryption": {
      "sizes": [
        {"name": "small", "cpu": 500, "delay_ms": 0.3},
        {"name": "large", "cpu": 2000, "delay_ms": 0.3}
      ],
      "demand": {"base": 75, "per_client": 35}
    }
  },
  "schedule": {
    "clients": [1, 10, 20, 30, 40, 50],
    "groups": [1, 1, 1, 1, 1, 1],
    "dwell_ticks": [6, 6, 8, 16, 40, 44]
  },
  "simulation": {
    "idle_timeout_ticks": 20,
    "burst_sigma": 0.15,
    "discovery_penalty_ms": 0.4,
    "overload_exponent": 2.0,
    "grace_ticks": 5,
    "slots_per_cluster_kind": 4,
    "base_seed": 1
  }
})json";

constexpr const char* kMlShareJson = R"json({
  "name": "ml-share",
  "use_case": {
    "name": "model-training-on-shared-records",
    "alpha": 0.7,
    "beta": 0.3,
    "delay_bound_ms": 10.0,
    "send_rate_kbps": [100, 1000]
  },
  "clusters": [
    {"id": 1, "cpu": 12000, "affiliation": "healthcare"},
    {"id": 2, "cpu": 12000, "affiliation": "research"},
    {"id": 3, "cpu": 12000, "affiliation": "research"}
  ],
  "links": [
    {"from": 1, "to": 2, "delay_ms": 1.0},
    {"from": 2, "to": 1, "delay_ms": 1.0},
    {"from": 1, "to": 3, "delay_ms": 0.5},
    {"from": 3, "to": 1, "delay_ms": 0.5},
    {"from": 2, "to": 3, "delay_ms": 0.7},
    {"from": 3, "to": 2, "delay_ms": 0.7}
  ],
  "ingress": 1,
  "egress": 3,
  "chain": ["anonymizer", "aggregator"],
  "services": {
    "anonymizer": {
      "sizes": [
        {"name": "small", "cpu": 500, "delay_ms": 0.25},
        {"name": "large", "cpu": 2000, "delay_ms": 0.35}
      ],
      "demand": {"base": 150, "per_client": 85}
    },
    "aggregator": {
      "sizes": [
        {"name": "small", "cpu": 500, "delay_ms": 0.25},
        {"name": "large", "cpu": 2000, "delay_ms": 0.35}
      ],
      "demand": {"base": 150, "per_client": 70}
    }
  },
  "schedule": {
    "clients": [1, 10, 20, 30, 40, 50],
    "groups": [1, 1, 2, 3, 4, 5],
    "dwell_ticks": [6, 6, 8, 16, 40, 44]
  },
  "simulation": {
    "idle_timeout_ticks": 20,
    "burst_sigma": 0.15,
    "discovery_penalty_ms": 0.4,
    "overload_exponent": 2.0,
    "grace_ticks": 5,
    "slots_per_cluster_kind": 6,
    "base_seed": 1
  }
})json";

constexpr const char* kStreamingJson = R"json({
  "name": "streaming",
  "use_case": {
    "name": "live-consultation-streams",
    "alpha": 0.3,
    "beta": 0.7,
    "delay_bound_ms": 5.0,
    "send_rate_kbps": [3000, 8000]
  },
  "clusters": [
    {"id": 1, "cpu": 30000, "affiliation": "healthcare"},
    {"id": 2, "cpu": 30000, "affiliation": "healthcare"},
    {"id": 3, "cpu": 30000, "affiliation": "research"}
  ],
  "links": [
    {"from": 1, "to": 2, "delay_ms": 0.1},
    {"from": 2, "to": 1, "delay_ms": 0.1}
  ],
  "ingress": 1,
  "egress": 1,
  "chain": ["transcoder", "packager"],
  "services": {
    "transcoder": {
      "sizes": [
        {"name": "small", "cpu": 4300, "delay_ms": 0.3},
        {"name": "large", "cpu": 4500, "delay_ms": 0.3}
      ],
      "demand": {"base": 750, "per_client": 425}
    },
    "packager": {
      "sizes": [
        {"name": "small", "cpu": 4300, "delay_ms": 0.3},
        {"name": "large", "cpu": 4500, "delay_ms": 0.3}
      ],
      "demand": {"base": 750, "per_client": 375}
    }
  },
  "schedule": {
    "clients": [1, 10, 20, 30, 40, 48],
    "groups": [1, 2, 3, 4, 5, 6],
    "dwell_ticks": [6, 6, 8, 16, 40, 44]
  },
  "simulation": {
    "idle_timeout_ticks": 20,
    "burst_sigma": 0.15,
    "discovery_penalty_ms": 0.4,
    "overload_exponent": 2.0,
    "grace_ticks": 5,
    "slots_per_cluster_kind": 4,
    "base_seed": 1
  }
})json";

// --- parsing helpers --------------------------------------------------------

[[noreturn]] void fail(const std::string& what) { throw ConfigError("scenario config: " + what); }

const json& need(const json& node, const char* key) {
    auto it = node.find(key);
    if (it == node.end()) fail(std::string("missing key '") + key + "'");
    return *it;
}

template <typename T>
T get_or(const json& node, const char* key, T fallback) {
    auto it = node.find(key);
    if (it == node.end()) return fallback;
    return it->template get<T>();
}

Affiliation parse_affiliation(const std::string& text) {
    return affiliation_from_string(text);
}

Scenario from_json(const json& doc) {
    Scenario s;
    s.name = need(doc, "name").get<std::string>();

    const json& uc = need(doc, "use_case");
    s.use_case.name = get_or<std::string>(uc, "name", s.name);
    s.use_case.alpha = get_or<double>(uc, "alpha", 0.7);
    s.use_case.beta = get_or<double>(uc, "beta", 0.3);
    s.use_case.delay_bound_ms = get_or<double>(uc, "delay_bound_ms", 10.0);
    if (uc.contains("send_rate_kbps")) {
        const json& range = uc["send_rate_kbps"];
        if (!range.is_array() || range.size() != 2) fail("send_rate_kbps must be [min, max]");
        s.use_case.send_rate_min_kbps = range[0].get<double>();
        s.use_case.send_rate_max_kbps = range[1].get<double>();
    }

    for (const json& c : need(doc, "clusters")) {
        s.topology.add_cluster(need(c, "id").get<ClusterId>(), need(c, "cpu").get<double>(),
                               parse_affiliation(get_or<std::string>(c, "affiliation", "healthcare")));
    }
    if (doc.contains("links")) {
        for (const json& l : doc["links"]) {
            s.topology.add_link(need(l, "from").get<ClusterId>(), need(l, "to").get<ClusterId>(),
                                need(l, "delay_ms").get<double>());
        }
    }

    s.ingress = get_or<ClusterId>(doc, "ingress", 1);
    s.egress = get_or<ClusterId>(doc, "egress", s.ingress);
    for (const json& kind : need(doc, "chain")) s.chain.push_back(kind.get<std::string>());

    for (const auto& [kind, body] : need(doc, "services").items()) {
        for (const json& size : need(body, "sizes")) {
            s.catalog.define_size(kind, SizeSpec{need(size, "name").get<std::string>(),
                                                 need(size, "cpu").get<double>(),
                                                 need(size, "delay_ms").get<double>()});
        }
        const json& demand = need(body, "demand");
        s.catalog.set_profile(kind, DemandProfile{need(demand, "base").get<double>(),
                                                  need(demand, "per_client").get<double>()});
    }

    const json& sched = need(doc, "schedule");
    const auto clients = need(sched, "clients").get<std::vector<int>>();
    const auto groups = need(sched, "groups").get<std::vector<int>>();
    const auto dwell = need(sched, "dwell_ticks").get<std::vector<int>>();
    if (clients.size() != groups.size() || clients.size() != dwell.size())
        fail("schedule arrays must have equal lengths");
    for (std::size_t i = 0; i < clients.size(); ++i)
        s.schedule.push_back(ScheduleLevel{clients[i], groups[i], dwell[i]});

    if (doc.contains("simulation")) {
        const json& sim = doc["simulation"];
        s.idle_timeout = get_or<Tick>(sim, "idle_timeout_ticks", s.idle_timeout);
        s.burst_sigma = get_or<double>(sim, "burst_sigma", s.burst_sigma);
        s.discovery_penalty_ms = get_or<double>(sim, "discovery_penalty_ms", s.discovery_penalty_ms);
        s.overload_exponent = get_or<double>(sim, "overload_exponent", s.overload_exponent);
        s.grace_ticks = get_or<Tick>(sim, "grace_ticks", s.grace_ticks);
        s.slots_per_cluster_kind = get_or<int>(sim, "slots_per_cluster_kind", s.slots_per_cluster_kind);
        s.base_seed = get_or<unsigned long>(sim, "base_seed", s.base_seed);
    }

    s.validate();
    return s;
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) fail("override must look like key.path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;  // bare words are strings
    }

    json* node = &doc;
    std::stringstream keys(path);
    std::string key;
    std::vector<std::string> parts;
    while (std::getline(keys, key, '.')) parts.push_back(key);
    if (parts.empty()) fail("override path is empty");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    (*node)[parts.back()] = value;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::vector<std::string>& overrides) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    for (const auto& assignment : overrides) apply_override(doc, assignment);
    return from_json(doc);
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw LookupError("cannot open scenario file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), overrides);
}

std::vector<std::string> builtin_scenario_names() { return {"ehr", "ml-share", "streaming"}; }

std::string builtin_scenario_text(const std::string& name) {
    if (name == "ehr") return kEhrJson;
    if (name == "ml-share") return kMlShareJson;
    if (name == "streaming") return kStreamingJson;
    throw LookupError("unknown builtin scenario: " + name);
}

Scenario builtin_scenario(const std::string& name, const std::vector<std::string>& overrides) {
    return parse_scenario(builtin_scenario_text(name), overrides);
}

Scenario resolve_scenario(const std::string& name_or_path,
                          const std::vector<std::string>& overrides) {
    for (const auto& known : builtin_scenario_names())
        if (name_or_path == known) return builtin_scenario(name_or_path, overrides);
    return load_scenario(name_or_path, overrides);
}

}  // namespace sfcsim
