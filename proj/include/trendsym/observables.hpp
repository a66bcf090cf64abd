#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trendsym/price_series.hpp"

namespace trendsym {

enum class ObservableKind { Returns, TReturns, TVReturns };
enum class TrendDirection { Up, Down };

std::string to_string(ObservableKind kind);
std::string to_string(TrendDirection dir);

// Maximal run of same-direction daily price steps. An up run has strictly
// increasing prices over P[start..start+k]; a down run has each price <= its
// predecessor (zero changes count as down). Consecutive runs share exactly
// one boundary price.
struct Trend {
    std::size_t start_index = 0;  // into PriceSeries
    std::size_t duration_k = 1;   // days
    TrendDirection direction = TrendDirection::Up;
    double log_change = 0.0;  // log(P[start+k]) - log(P[start])
};

struct EntryMeta {
    std::size_t start_index = 0;
    std::size_t duration_k = 1;
    TrendDirection direction = TrendDirection::Up;
};

// Returns: daily log differences, no metadata.
// TReturns: per-trend log change.  TVReturns: per-trend log change / duration.
struct ObservableSeries {
    ObservableKind kind = ObservableKind::Returns;
    std::vector<double> values;
    std::vector<EntryMeta> meta;  // empty for Returns, one per value otherwise

    std::size_t size() const { return values.size(); }
};

struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;    // sample standard deviation (n-1)
    double skewness = 0.0;  // standardized third moment (population moments)
    double kurtosis = 0.0;  // fourth standardized moment, non-excess
};

struct Mode {
    double location = 0.0;
    double height = 0.0;
};

struct DensityProfile {
    std::vector<double> grid;
    std::vector<double> density;
    std::vector<Mode> modes;                // descending height
    std::optional<double> peak_ratio;       // highest/second, when >= 2 modes
    double bandwidth = 0.0;
};

ObservableSeries daily_returns(const PriceSeries& ps);

std::vector<Trend> segment_trends(const PriceSeries& ps);

// kind must be TReturns or TVReturns.
ObservableSeries trend_returns(std::span<const Trend> trends,
                               ObservableKind kind);

ObservableSeries make_observable(const PriceSeries& ps, ObservableKind kind);

DescriptiveStats describe(std::span<const double> values);
inline DescriptiveStats describe(const ObservableSeries& s) {
    return describe(std::span<const double>(s.values));
}

// Gaussian KDE with Silverman bandwidth on a 512-point grid spanning
// [min-6h, max+6h] (wide enough that the trapezoid integral of the density
// is 1 to 1e-6); modes are strict local maxima, maxima closer than two grid
// cells are merged.
DensityProfile density_profile(std::span<const double> values,
                               std::size_t grid_points = 512);
inline DensityProfile density_profile(const ObservableSeries& s,
                                      std::size_t grid_points = 512) {
    return density_profile(std::span<const double>(s.values), grid_points);
}

// Serialization: "index,value,start_index,duration,direction" (meta columns
// empty for Returns).
void write_observable_csv(std::ostream& out, const ObservableSeries& s);

}  // namespace trendsym
