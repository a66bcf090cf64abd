#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trendsym/observables.hpp"
#include "trendsym/price_series.hpp"
#include "trendsym/scan.hpp"

namespace trendsym {

// Window length counts trading-day prices, not observable entries; trend
// observables inside a window are re-segmented from the window's first
// price, truncating any run that straddles the boundary.
struct RollingConfig {
    std::size_t window_days = 252;
    std::size_t step_days = 1;
    double alpha = 0.05;
    ObservableKind observable = ObservableKind::Returns;
    std::size_t min_entries = 30;  // below this the window is not tested
    GridSpec grid{};
};

enum class RollingStatus { Ok, NoSymmetryPoint, InsufficientData };

std::string to_string(RollingStatus s);

struct RollingPoint {
    Date window_end_date;
    std::size_t n_obs = 0;
    RollingStatus status = RollingStatus::InsufficientData;
    std::optional<double> tn_at_zero;
    std::optional<double> c_star;
    std::optional<double> c_min;
    std::optional<double> c_max;
};

// One scan per window of window_days consecutive prices, stepped by
// step_days. Output length is floor((len - window_days)/step_days) + 1.
// Windows are mutually independent; each point equals a from-scratch scan of
// its slice. Throws SeriesTooShortError when len < window_days + 1.
std::vector<RollingPoint> roll(const PriceSeries& ps, const RollingConfig& cfg);

struct Event {
    std::string label;
    Date date;
};

using EventTable = std::vector<Event>;

// Built-in crisis/extreme-day annotations.
EventTable default_market_events();

struct AnnotatedEvent {
    Event event;
    std::optional<Date> window_end;  // first window ending on/after the event
    bool outside_range = false;      // event dated after the last window
};

std::vector<AnnotatedEvent> annotate(std::span<const RollingPoint> points,
                                     const EventTable& events);

}  // namespace trendsym
