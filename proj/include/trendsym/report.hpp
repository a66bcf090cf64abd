#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "trendsym/critical_values.hpp"
#include "trendsym/observables.hpp"
#include "trendsym/price_series.hpp"
#include "trendsym/rolling.hpp"
#include "trendsym/scan.hpp"

namespace trendsym {

inline constexpr const char* kToolVersion = "0.1.0";

// Provenance block embedded in every emitted artifact; re-running the same
// command with the same manifest reproduces outputs byte for byte.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::optional<std::string> input_digest;  // "fnv1a64:<16 hex>"
    std::optional<std::int64_t> seed;         // set only when randomness used
    std::string tool_version = kToolVersion;

    nlohmann::json to_json() const;
};

std::uint64_t fnv1a64(std::span<const char> bytes);
std::string digest_string(std::span<const char> bytes);

nlohmann::json to_json(const CleaningReport& report);
nlohmann::json to_json(const DescriptiveStats& stats);
nlohmann::json to_json(const SymmetryResult& result);
nlohmann::json to_json(const RollingPoint& point);
nlohmann::json to_json(std::span<const AnnotatedEvent> events);
nlohmann::json to_json(const ObservableSeries& series);

// CSV artifacts. Each starts with a "# manifest: {...}" comment line; the
// CSV readers in this project skip '#' lines.
void write_tn_curve_csv(std::ostream& out, const TnCurve& curve,
                        const RunManifest& manifest);
void write_rolling_csv(std::ostream& out, std::span<const RollingPoint> points,
                       const RunManifest& manifest);

// Events file: header "label,date", ISO dates.
EventTable parse_events_csv(std::istream& in);

}  // namespace trendsym
