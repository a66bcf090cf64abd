#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace trendsym {

// Kahan compensated summation. Deterministic for a fixed input order.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Type-7 quantile (linear interpolation of order statistics) on sorted data.
inline double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0,1]");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

// Median of sorted data. The even case averages the two middle values as
// (a+b)/2, which negates exactly under sample mirroring.
inline double median_of_sorted(std::span<const double> sorted) {
    if (sorted.empty()) throw std::invalid_argument("median of empty data");
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) * 0.5;
}

}  // namespace trendsym
