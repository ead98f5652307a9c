#pragma once

#include <string>
#include <vector>

#include "sfcsim/scenario.hpp"

namespace sfcsim {

// Builds a scenario from its JSON description. Overrides are dot-path
// assignments applied to the JSON tree before construction, e.g.
// "simulation.burst_sigma=0", "use_case.alpha=0.5",
// "schedule.dwell_ticks=[10,10]"; the right-hand side is parsed as JSON when
// possible and treated as a string otherwise.
Scenario parse_scenario(const std::string& json_text,
                        const std::vector<std::string>& overrides = {});

Scenario load_scenario(const std::string& path,
                       const std::vector<std::string>& overrides = {});

// Ready-made deployments: "ehr" (electronic health records), "ml-share"
// (model training on shared records), "streaming" (live consultation
// streams). Throws LookupError for unknown names.
Scenario builtin_scenario(const std::string& name,
                          const std::vector<std::string>& overrides = {});

std::vector<std::string> builtin_scenario_names();

// The raw JSON text of a builtin, exactly what parse_scenario consumes.
std::string builtin_scenario_text(const std::string& name);

// "name" when it names a builtin, otherwise treats it as a file path.
Scenario resolve_scenario(const std::string& name_or_path,
                          const std::vector<std::string>& overrides = {});

}  // namespace sfcsim
