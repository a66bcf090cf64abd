#include "trendsym/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "trendsym/errors.hpp"
#include "trendsym/numeric.hpp"

namespace trendsym {

std::string to_string(ObservableKind kind) {
    switch (kind) {
        case ObservableKind::Returns: return "Returns";
        case ObservableKind::TReturns: return "TReturns";
        case ObservableKind::TVReturns: return "TVReturns";
    }
    return "?";
}

std::string to_string(TrendDirection dir) {
    return dir == TrendDirection::Up ? "Up" : "Down";
}

ObservableSeries daily_returns(const PriceSeries& ps) {
    if (ps.size() < 2) throw EmptySeriesError("need at least 2 prices");
    ObservableSeries out;
    out.kind = ObservableKind::Returns;
    out.values.reserve(ps.size() - 1);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i)
        out.values.push_back(std::log(ps.prices[i + 1]) - std::log(ps.prices[i]));
    return out;
}

std::vector<Trend> segment_trends(const PriceSeries& ps) {
    if (ps.size() < 2) throw EmptySeriesError("need at least 2 prices");
    std::vector<Trend> trends;

    auto step_dir = [&](std::size_t i) {
        // Zero change extends a down run.
        return ps.prices[i + 1] > ps.prices[i] ? TrendDirection::Up
                                               : TrendDirection::Down;
    };

    std::size_t start = 0;
    TrendDirection dir = step_dir(0);
    for (std::size_t i = 1; i + 1 < ps.size(); ++i) {
        const TrendDirection d = step_dir(i);
        if (d != dir) {
            trends.push_back(Trend{start, i - start, dir,
                                   std::log(ps.prices[i]) -
                                       std::log(ps.prices[start])});
            start = i;
            dir = d;
        }
    }
    const std::size_t last = ps.size() - 1;
    trends.push_back(Trend{start, last - start, dir,
                           std::log(ps.prices[last]) -
                               std::log(ps.prices[start])});
    return trends;
}

ObservableSeries trend_returns(std::span<const Trend> trends,
                               ObservableKind kind) {
    if (kind == ObservableKind::Returns)
        throw std::invalid_argument("trend_returns expects a trend kind");
    if (trends.empty()) throw EmptySeriesError("no trends");
    ObservableSeries out;
    out.kind = kind;
    out.values.reserve(trends.size());
    out.meta.reserve(trends.size());
    for (const Trend& t : trends) {
        const double v = kind == ObservableKind::TReturns
                             ? t.log_change
                             : t.log_change / static_cast<double>(t.duration_k);
        out.values.push_back(v);
        out.meta.push_back(EntryMeta{t.start_index, t.duration_k, t.direction});
    }
    return out;
}

ObservableSeries make_observable(const PriceSeries& ps, ObservableKind kind) {
    if (kind == ObservableKind::Returns) return daily_returns(ps);
    return trend_returns(segment_trends(ps), kind);
}

DescriptiveStats describe(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw InsufficientDataError("describe needs n >= 2");

    KahanSum sum;
    for (double v : values) sum.add(v);
    const double mean = sum.value() / static_cast<double>(n);

    KahanSum m2, m3, m4;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2.add(d2);
        m3.add(d2 * d);
        m4.add(d2 * d2);
    }
    const double nn = static_cast<double>(n);
    const double var_pop = m2.value() / nn;
    DescriptiveStats out;
    out.n = n;
    out.mean = mean;
    out.stddev = std::sqrt(m2.value() / (nn - 1.0));
    if (var_pop > 0.0) {
        out.skewness = (m3.value() / nn) / std::pow(var_pop, 1.5);
        out.kurtosis = (m4.value() / nn) / (var_pop * var_pop);
    }
    return out;
}

DensityProfile density_profile(std::span<const double> values,
                               std::size_t grid_points) {
    const std::size_t n = values.size();
    if (n < 10) throw InsufficientDataError("density_profile needs n >= 10");
    if (grid_points < 8) throw std::invalid_argument("grid too coarse");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const DescriptiveStats stats = describe(values);
    const double iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);
    double spread = stats.stddev;
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    const double h =
        0.9 * spread * std::pow(static_cast<double>(n), -0.2);  // Silverman
    if (!(h > 0.0))
        throw InsufficientDataError("sample has no spread; KDE undefined");

    DensityProfile out;
    out.bandwidth = h;
    // +-6h: at +-3h a boundary kernel still has ~1.3e-3 of its mass outside
    // the grid, which breaks the 1e-6 integral contract below n ~ 3000.
    const double lo = sorted.front() - 6.0 * h;
    const double hi = sorted.back() + 6.0 * h;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    out.grid.resize(grid_points);
    out.density.resize(grid_points);
    const double norm =
        1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t j = 0; j < grid_points; ++j) {
        const double g = lo + static_cast<double>(j) * step;
        out.grid[j] = g;
        KahanSum acc;
        for (double x : sorted) {
            const double z = (g - x) / h;
            acc.add(std::exp(-0.5 * z * z));
        }
        out.density[j] = norm * acc.value();
    }

    // Strict interior local maxima; merge maxima closer than 2 grid cells.
    std::vector<std::size_t> peaks;
    for (std::size_t j = 1; j + 1 < grid_points; ++j) {
        if (out.density[j] > out.density[j - 1] &&
            out.density[j] > out.density[j + 1])
            peaks.push_back(j);
    }
    std::vector<std::size_t> merged;
    for (std::size_t p : peaks) {
        if (!merged.empty() && p - merged.back() < 2) {
            if (out.density[p] > out.density[merged.back()]) merged.back() = p;
        } else {
            merged.push_back(p);
        }
    }
    for (std::size_t p : merged)
        out.modes.push_back(Mode{out.grid[p], out.density[p]});
    std::sort(out.modes.begin(), out.modes.end(),
              [](const Mode& a, const Mode& b) { return a.height > b.height; });
    if (out.modes.size() >= 2 && out.modes[1].height > 0.0)
        out.peak_ratio = out.modes[0].height / out.modes[1].height;
    return out;
}

void write_observable_csv(std::ostream& out, const ObservableSeries& s) {
    out << "index,value,start_index,duration,direction\n";
    char buf[40];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", s.values[i]);
        out << i << ',' << buf << ',';
        if (!s.meta.empty()) {
            const EntryMeta& m = s.meta[i];
            out << m.start_index << ',' << m.duration_k << ','
                << to_string(m.direction);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

}  // namespace trendsym
