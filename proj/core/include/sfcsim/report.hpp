#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfcsim/agent.hpp"
#include "sfcsim/chain_state.hpp"

namespace sfcsim {

// One aggregated observation line: how one service kind fared on one cluster
// during one client level of one evaluation seed.
struct TraceRow {
    unsigned long seed{};
    int clients{};
    ClusterId cluster{};
    ServiceKind kind;
    int pods{};                // live pods when the level ended
    double mean_util_pct{};    // mean pod load over the level, percent of capacity
    double latency_ms{};       // mean round trip while requests were mapped
    double overhead_ms{};      // mean chain cost over the ingress-egress baseline
};

// Writes "seed,clients,cluster,kind,pods,mean_util_pct,latency_ms,overhead_ms"
// plus one row per entry, floats fixed to three decimals.
void emit_trace(const std::string& path, const std::vector<TraceRow>& rows);

void emit_summary(const std::string& path, std::size_t total_placements,
                  std::size_t violations, double mean_overhead_ms,
                  std::optional<int> episodes_to_threshold);

// episode,train_return,eval_return per line.
void emit_curve(const std::string& path, const std::vector<EpisodePoint>& curve);

}  // namespace sfcsim
