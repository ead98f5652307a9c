#include "sfcsim/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "sfcsim/errors.hpp"

namespace sfcsim {

namespace {

std::ofstream open_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw ConfigError("report: cannot open " + path + " for writing");
    }
    return out;
}

std::string fixed3(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

}  // namespace

void emit_trace(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream out = open_out(path);
    out << "seed,clients,cluster,kind,pods,mean_util_pct,latency_ms,overhead_ms\n";
    for (const TraceRow& row : rows) {
        out << row.seed << ',' << row.clients << ',' << row.cluster << ','
            << row.kind << ',' << row.pods << ',' << fixed3(row.mean_util_pct)
            << ',' << fixed3(row.latency_ms) << ',' << fixed3(row.overhead_ms)
            << '\n';
    }
}

void emit_summary(const std::string& path, std::size_t total_placements,
                  std::size_t violations, double mean_overhead_ms,
                  std::optional<int> episodes_to_threshold) {
    nlohmann::ordered_json doc;
    doc["total_placements"] = total_placements;
    doc["violations"] = violations;
    doc["mean_overhead_ms"] = mean_overhead_ms;
    if (episodes_to_threshold.has_value()) {
        doc["episodes_to_threshold"] = *episodes_to_threshold;
    } else {
        doc["episodes_to_threshold"] = nullptr;
    }
    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

void emit_curve(const std::string& path, const std::vector<EpisodePoint>& curve) {
    std::ofstream out = open_out(path);
    out << "episode,train_return,eval_return\n";
    for (const EpisodePoint& point : curve) {
        out << point.episode << ',' << fixed3(point.train_return) << ','
            << fixed3(point.eval_return) << '\n';
    }
}

}  // namespace sfcsim
