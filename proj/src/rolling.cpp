#include "trendsym/rolling.hpp"

#include <algorithm>

#include "parallel_for.hpp"
#include "trendsym/critical_values.hpp"
#include "trendsym/errors.hpp"
#include "trendsym/tn.hpp"

namespace trendsym {

std::string to_string(RollingStatus s) {
    switch (s) {
        case RollingStatus::Ok: return "Ok";
        case RollingStatus::NoSymmetryPoint: return "NoSymmetryPoint";
        case RollingStatus::InsufficientData: return "InsufficientData";
    }
    return "?";
}

std::vector<RollingPoint> roll(const PriceSeries& ps, const RollingConfig& cfg) {
    if (cfg.window_days < 30) throw std::invalid_argument("window_days must be >= 30");
    if (cfg.step_days < 1) throw std::invalid_argument("step_days must be >= 1");
    if (ps.size() < cfg.window_days + 1)
        throw SeriesTooShortError("series shorter than window + 1 trading days");
    CriticalTable::asymptotic().upper_point(cfg.alpha);  // validate alpha once

    const std::size_t n_windows =
        (ps.size() - cfg.window_days) / cfg.step_days + 1;
    std::vector<RollingPoint> out(n_windows);

    detail::parallel_for(n_windows, [&](std::size_t wi) {
        const std::size_t start = wi * cfg.step_days;
        const std::size_t end = start + cfg.window_days;  // exclusive

        PriceSeries window;
        window.symbol = ps.symbol;
        window.dates.assign(ps.dates.begin() + static_cast<std::ptrdiff_t>(start),
                            ps.dates.begin() + static_cast<std::ptrdiff_t>(end));
        window.prices.assign(ps.prices.begin() + static_cast<std::ptrdiff_t>(start),
                             ps.prices.begin() + static_cast<std::ptrdiff_t>(end));

        RollingPoint pt;
        pt.window_end_date = window.dates.back();

        const ObservableSeries obs = make_observable(window, cfg.observable);
        pt.n_obs = obs.size();
        if (pt.n_obs < cfg.min_entries) {
            pt.status = RollingStatus::InsufficientData;
            out[wi] = pt;
            return;
        }
        try {
            const SymmetryResult sr = scan(obs.values, cfg.alpha, cfg.grid);
            pt.tn_at_zero = sr.tn_at_zero;
            if (sr.status == ScanStatus::Ok) {
                pt.status = RollingStatus::Ok;
                pt.c_star = sr.c_star;
                pt.c_min = sr.c_min;
                pt.c_max = sr.c_max;
            } else {
                pt.status = RollingStatus::NoSymmetryPoint;
            }
        } catch (const AllZerosError&) {
            pt.status = RollingStatus::InsufficientData;
        } catch (const InsufficientDataError&) {
            pt.status = RollingStatus::InsufficientData;
        }
        out[wi] = pt;
    });
    return out;
}

EventTable default_market_events() {
    // The Brexit referendum was 2016-06-23; the 2018 date is kept verbatim
    // from the annotation list this set reproduces.
    return EventTable{
        {"Japanese asset price bubble", Date{1990, 1, 1}},
        {"Tequila Effect", Date{1994, 12, 20}},
        {"Dotcom bubble", Date{2000, 3, 10}},
        {"Subprime crisis", Date{2007, 8, 9}},
        {"Brexit", Date{2018, 6, 23}},
    };
}

std::vector<AnnotatedEvent> annotate(std::span<const RollingPoint> points,
                                     const EventTable& events) {
    std::vector<AnnotatedEvent> out;
    out.reserve(events.size());
    for (const Event& ev : events) {
        AnnotatedEvent ann;
        ann.event = ev;
        const auto it = std::find_if(points.begin(), points.end(),
                                     [&](const RollingPoint& p) {
                                         return p.window_end_date >= ev.date;
                                     });
        if (it == points.end()) {
            ann.outside_range = true;
        } else {
            ann.window_end = it->window_end_date;
        }
        out.push_back(ann);
    }
    return out;
}

}  // namespace trendsym
