#include "trendsym/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "trendsym/errors.hpp"

namespace trendsym {

using nlohmann::json;

json RunManifest::to_json() const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["input_digest"] = input_digest ? json(*input_digest) : json(nullptr);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["tool_version"] = tool_version;
    return j;
}

std::uint64_t fnv1a64(std::span<const char> bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string digest_string(std::span<const char> bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

json to_json(const CleaningReport& report) {
    return json{{"rows_total", report.rows_total},
                {"rows_kept", report.rows_kept},
                {"dropped",
                 {{"bad_date", report.dropped.bad_date},
                  {"missing_price", report.dropped.missing_price},
                  {"non_numeric_price", report.dropped.non_numeric_price},
                  {"non_positive_price", report.dropped.non_positive_price},
                  {"duplicate_date", report.dropped.duplicate_date},
                  {"total", report.dropped.total()}}}};
}

json to_json(const DescriptiveStats& stats) {
    return json{{"n", stats.n},
                {"mean", stats.mean},
                {"stddev", stats.stddev},
                {"skewness", stats.skewness},
                {"kurtosis", stats.kurtosis}};
}

json to_json(const SymmetryResult& result) {
    json j;
    j["alpha"] = result.alpha;
    j["threshold"] = result.threshold;
    j["status"] = result.status == ScanStatus::Ok ? "ok" : "no_symmetry_point";
    j["tn_at_zero"] = result.tn_at_zero;
    j["zero_symmetric"] = result.zero_symmetric;
    if (result.status == ScanStatus::Ok) {
        j["c_min"] = result.c_min;
        j["c_max"] = result.c_max;
        j["c_star"] = result.c_star;
        j["tn_at_c_star"] = result.tn_at_c_star;
    } else {
        j["c_min"] = nullptr;
        j["c_max"] = nullptr;
        j["c_star"] = nullptr;
        j["tn_at_c_star"] = nullptr;
    }
    j["disconnected"] = result.disconnected;
    json comps = json::array();
    for (const auto& [lo, hi] : result.components) comps.push_back({lo, hi});
    j["components"] = comps;
    j["grid_truncated"] = result.grid_truncated;
    j["endpoint_precision"] = result.endpoint_precision;
    j["skipped_grid_points"] = result.skipped_grid_points;
    return j;
}

json to_json(const RollingPoint& point) {
    auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return json{{"window_end_date", point.window_end_date.to_string()},
                {"n_obs", point.n_obs},
                {"status", to_string(point.status)},
                {"tn_at_zero", opt(point.tn_at_zero)},
                {"c_star", opt(point.c_star)},
                {"c_min", opt(point.c_min)},
                {"c_max", opt(point.c_max)}};
}

json to_json(std::span<const AnnotatedEvent> events) {
    json arr = json::array();
    for (const AnnotatedEvent& e : events) {
        arr.push_back(json{
            {"label", e.event.label},
            {"date", e.event.date.to_string()},
            {"window_end",
             e.window_end ? json(e.window_end->to_string()) : json(nullptr)},
            {"outside_range", e.outside_range}});
    }
    return arr;
}

json to_json(const ObservableSeries& series) {
    json entries = json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
        json e{{"index", i}, {"value", series.values[i]}};
        if (!series.meta.empty()) {
            e["start_index"] = series.meta[i].start_index;
            e["duration"] = series.meta[i].duration_k;
            e["direction"] = to_string(series.meta[i].direction);
        } else {
            e["start_index"] = nullptr;
            e["duration"] = nullptr;
            e["direction"] = nullptr;
        }
        entries.push_back(e);
    }
    return json{{"kind", to_string(series.kind)}, {"entries", entries}};
}

namespace {

void write_manifest_comment(std::ostream& out, const RunManifest& manifest) {
    out << "# manifest: " << manifest.to_json().dump() << '\n';
}

void write_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

void write_tn_curve_csv(std::ostream& out, const TnCurve& curve,
                        const RunManifest& manifest) {
    write_manifest_comment(out, manifest);
    out << "c,tn\n";
    for (std::size_t i = 0; i < curve.c_grid.size(); ++i) {
        write_double(out, curve.c_grid[i]);
        out << ',';
        write_double(out, curve.tn_values[i]);
        out << '\n';
    }
}

void write_rolling_csv(std::ostream& out, std::span<const RollingPoint> points,
                       const RunManifest& manifest) {
    write_manifest_comment(out, manifest);
    out << "window_end_date,n_obs,tn_at_zero,c_star,c_min,c_max,status\n";
    auto cell = [&](const std::optional<double>& v) {
        if (v) write_double(out, *v);
    };
    for (const RollingPoint& p : points) {
        out << p.window_end_date.to_string() << ',' << p.n_obs << ',';
        cell(p.tn_at_zero);
        out << ',';
        cell(p.c_star);
        out << ',';
        cell(p.c_min);
        out << ',';
        cell(p.c_max);
        out << ',' << to_string(p.status) << '\n';
    }
}

EventTable parse_events_csv(std::istream& in) {
    EventTable events;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw Error("events CSV row lacks a comma: " + line);
        const std::string label = line.substr(0, comma);
        const std::string date_str = line.substr(comma + 1);
        if (!header_seen) {
            header_seen = true;
            if (label == "label") continue;  // header row
        }
        const auto date = Date::parse_iso(date_str);
        if (!date) throw Error("bad event date: " + date_str);
        events.push_back(Event{label, *date});
    }
    return events;
}

}  // namespace trendsym
