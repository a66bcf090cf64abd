#include "trendsym/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "trendsym/critical_values.hpp"
#include "trendsym/errors.hpp"
#include "trendsym/numeric.hpp"

namespace trendsym {

namespace {

struct Eval {
    double c;
    double value;
};

// Tn(c), or nullopt when the shifted sample degenerates (all zeros / fewer
// than two nonzero values at this c).
class Curve {
public:
    explicit Curve(const ShiftedTnEvaluator& ev) : ev_(ev) {}

    std::optional<double> operator()(double c) const {
        try {
            return ev_.at(c).statistic;
        } catch (const AllZerosError&) {
            return std::nullopt;
        } catch (const InsufficientDataError&) {
            return std::nullopt;
        }
    }

private:
    const ShiftedTnEvaluator& ev_;
};

// Pairwise midpoints (x_i + x_j)/2, i <= j, strictly inside (lo, hi).
std::vector<double> breakpoints_in_window(const std::vector<double>& sorted,
                                          double lo, double hi) {
    std::vector<double> bps;
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double jlo = 2.0 * lo - sorted[i];
        const double jhi = 2.0 * hi - sorted[i];
        auto first = std::upper_bound(sorted.begin() + static_cast<std::ptrdiff_t>(i),
                                      sorted.end(), jlo);
        auto last = std::lower_bound(first, sorted.end(), jhi);
        for (auto it = first; it != last; ++it) {
            const double m = (sorted[i] + *it) * 0.5;
            if (m > lo && m < hi) bps.push_back(m);
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return bps;
}

std::vector<double> cell_bounds(const std::vector<double>& sorted, double lo,
                                double hi) {
    std::vector<double> bounds;
    bounds.push_back(lo);
    for (double b : breakpoints_in_window(sorted, lo, hi)) bounds.push_back(b);
    bounds.push_back(hi);
    return bounds;
}

// Infimum of the sub-threshold set inside [lo, hi]: left boundary of the
// first plateau whose value is below the threshold. Exact up to the plateau
// structure of the step function.
double refine_left_exact(const Curve& eval, const std::vector<double>& sorted,
                         double lo, double hi, double threshold,
                         double fallback, std::vector<Eval>& pool) {
    const std::vector<double> bounds = cell_bounds(sorted, lo, hi);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const double m = (bounds[k] + bounds[k + 1]) * 0.5;
        if (!(m > bounds[k] && m < bounds[k + 1])) continue;
        const auto v = eval(m);
        if (!v) continue;
        pool.push_back(Eval{m, *v});
        if (*v < threshold) return bounds[k];
    }
    return fallback;
}

double refine_right_exact(const Curve& eval, const std::vector<double>& sorted,
                          double lo, double hi, double threshold,
                          double fallback, std::vector<Eval>& pool) {
    const std::vector<double> bounds = cell_bounds(sorted, lo, hi);
    for (std::size_t k = bounds.size() - 1; k >= 1; --k) {
        const double m = (bounds[k - 1] + bounds[k]) * 0.5;
        if (!(m > bounds[k - 1] && m < bounds[k])) continue;
        const auto v = eval(m);
        if (!v) continue;
        pool.push_back(Eval{m, *v});
        if (*v < threshold) return bounds[k];
    }
    return fallback;
}

// Sweep fallback for large n: leftmost (resp. rightmost) evaluation below
// the threshold at resolution w.
double refine_left_sweep(const Curve& eval, double lo, double hi,
                         double threshold, double fallback, double w,
                         std::vector<Eval>& pool) {
    const auto count = static_cast<std::size_t>((hi - lo) / w);
    for (std::size_t k = 1; k <= count; ++k) {
        const double c = lo + static_cast<double>(k) * w;
        if (c >= hi) break;
        const auto v = eval(c);
        if (!v) continue;
        pool.push_back(Eval{c, *v});
        if (*v < threshold) return c;
    }
    return fallback;
}

double refine_right_sweep(const Curve& eval, double lo, double hi,
                          double threshold, double fallback, double w,
                          std::vector<Eval>& pool) {
    const auto count = static_cast<std::size_t>((hi - lo) / w);
    for (std::size_t k = 1; k <= count; ++k) {
        const double c = hi - static_cast<double>(k) * w;
        if (c <= lo) break;
        const auto v = eval(c);
        if (!v) continue;
        pool.push_back(Eval{c, *v});
        if (*v < threshold) return c;
    }
    return fallback;
}

// Evaluates breakpoints and plateau midpoints inside [lo, hi] into the pool,
// so minima sitting on a single breakpoint (exactly mirror-symmetric shifted
// samples) are found, not just plateau values. Falls back to a uniform sweep
// when the window holds too many breakpoints to enumerate.
void refine_argmin(const Curve& eval, const std::vector<double>& sorted,
                   double lo, double hi, bool exact, double w,
                   std::vector<Eval>& pool) {
    constexpr std::size_t kMaxCells = 300000;
    constexpr std::size_t kMaxSweep = 8192;
    if (exact) {
        const std::vector<double> bounds = cell_bounds(sorted, lo, hi);
        if (bounds.size() <= kMaxCells) {
            for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
                if (k > 0) {
                    if (const auto v = eval(bounds[k]))
                        pool.push_back(Eval{bounds[k], *v});
                }
                const double m = (bounds[k] + bounds[k + 1]) * 0.5;
                if (!(m > bounds[k] && m < bounds[k + 1])) continue;
                if (const auto v = eval(m)) pool.push_back(Eval{m, *v});
            }
            return;
        }
    }
    const double width = hi - lo;
    const double ws = std::max(w, width / static_cast<double>(kMaxSweep));
    const auto count = static_cast<std::size_t>(width / ws);
    for (std::size_t k = 1; k <= count; ++k) {
        const double c = lo + static_cast<double>(k) * ws;
        if (c >= hi) break;
        if (const auto v = eval(c)) pool.push_back(Eval{c, *v});
    }
}

double sample_stddev(const std::vector<double>& values) {
    KahanSum sum;
    for (double v : values) sum.add(v);
    const double mean = sum.value() / static_cast<double>(values.size());
    KahanSum m2;
    for (double v : values) {
        const double d = v - mean;
        m2.add(d * d);
    }
    return std::sqrt(m2.value() / (static_cast<double>(values.size()) - 1.0));
}

}  // namespace

SymmetryResult scan(std::span<const double> sample, double alpha,
                    const GridSpec& grid) {
    SymmetryResult res;
    res.alpha = alpha;
    res.threshold = CriticalTable::asymptotic().upper_point(alpha).point;

    const ShiftedTnEvaluator evaluator(sample);
    const Curve eval(evaluator);

    res.tn_at_zero = evaluator.at(0.0).statistic;  // degenerate input throws here
    res.zero_symmetric = res.tn_at_zero < res.threshold;

    const std::vector<double>& sorted = evaluator.sorted_sample();
    const double center =
        grid.center ? *grid.center : median_of_sorted(sorted);
    double half_width;
    if (grid.half_width) {
        half_width = *grid.half_width;
    } else {
        const double sigma = sample_stddev(sorted);
        half_width = grid.span_sigma_multiple * sigma /
                     std::sqrt(static_cast<double>(sorted.size()));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width) ||
        !std::isfinite(center))
        throw InsufficientDataError("sample has no spread; cannot build scan grid");

    const std::size_t points = std::max<std::size_t>(3, grid.points | 1);
    const std::size_t mid = points / 2;

    std::vector<double> cs(points);
    std::vector<double> vals(points);
    std::vector<char> have(points);
    std::vector<char> below(points);
    double step = 0.0;
    int expansion = 0;
    bool any_below = false;

    for (;;) {
        step = half_width / static_cast<double>(mid);
        any_below = false;
        res.skipped_grid_points = 0;
        for (std::size_t j = 0; j < points; ++j) {
            const double offset =
                (static_cast<double>(j) - static_cast<double>(mid)) * step;
            cs[j] = center + offset;
            const auto v = eval(cs[j]);
            have[j] = v.has_value();
            vals[j] = v.value_or(std::numeric_limits<double>::quiet_NaN());
            below[j] = v.has_value() && *v < res.threshold;
            if (below[j]) any_below = true;
            if (!have[j]) ++res.skipped_grid_points;
        }
        if (!any_below) break;
        if ((below.front() || below.back()) && expansion < grid.max_expansions) {
            half_width *= 2.0;
            ++expansion;
            continue;
        }
        res.grid_truncated = below.front() || below.back();
        break;
    }

    res.curve.threshold = res.threshold;
    for (std::size_t j = 0; j < points; ++j) {
        if (!have[j]) continue;
        res.curve.c_grid.push_back(cs[j]);
        res.curve.tn_values.push_back(vals[j]);
    }

    if (!any_below) {
        res.status = ScanStatus::NoSymmetryPoint;
        return res;
    }
    res.status = ScanStatus::Ok;

    std::size_t l = 0, r = 0;
    bool in_run = false;
    for (std::size_t j = 0; j < points; ++j) {
        if (below[j]) {
            if (!in_run) {
                if (res.components.empty()) l = j;
                res.components.emplace_back(cs[j], cs[j]);
                in_run = true;
            }
            res.components.back().second = cs[j];
            r = j;
        } else {
            in_run = false;
        }
    }
    res.disconnected = res.components.size() > 1;

    std::vector<Eval> pool;
    pool.reserve(points + 1024);
    for (std::size_t j = 0; j < points; ++j)
        if (have[j]) pool.push_back(Eval{cs[j], vals[j]});

    const bool exact = sorted.size() <= grid.exact_refine_max_n;
    const double w = step / grid.refine_divisor;
    double left_prec = 0.0, right_prec = 0.0;

    if (l == 0) {
        res.c_min = cs[0];
        left_prec = step;
    } else {
        const double lo = cs[l >= 3 ? l - 3 : 0];
        const double hi = cs[l];
        res.c_min = exact ? refine_left_exact(eval, sorted, lo, hi,
                                              res.threshold, hi, pool)
                          : refine_left_sweep(eval, lo, hi, res.threshold, hi,
                                              w, pool);
        left_prec = exact ? 0.0 : w;
    }
    if (r == points - 1) {
        res.c_max = cs[points - 1];
        right_prec = step;
    } else {
        const double lo = cs[r];
        const double hi = cs[std::min(r + 3, points - 1)];
        res.c_max = exact ? refine_right_exact(eval, sorted, lo, hi,
                                               res.threshold, lo, pool)
                          : refine_right_sweep(eval, lo, hi, res.threshold, lo,
                                               w, pool);
        right_prec = exact ? 0.0 : w;
    }
    res.endpoint_precision = std::max(left_prec, right_prec);

    // Sharpen the argmin. The grid may tie at its minimum across a long run
    // of plateaus (the true minimizer can be a single interior breakpoint),
    // so each maximal run of minimal grid values is refined end to end plus
    // one step of margin.
    double grid_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < points; ++j)
        if (have[j] && vals[j] < grid_min) grid_min = vals[j];
    for (std::size_t j = 0; j < points;) {
        if (!have[j] || vals[j] != grid_min) {
            ++j;
            continue;
        }
        std::size_t k = j;
        while (k + 1 < points && have[k + 1] && vals[k + 1] == grid_min) ++k;
        const double lo = cs[j >= 1 ? j - 1 : 0];
        const double hi = cs[std::min(k + 1, points - 1)];
        refine_argmin(eval, sorted, lo, hi, exact, w, pool);
        j = k + 1;
    }

    std::sort(pool.begin(), pool.end(),
              [](const Eval& a, const Eval& b) { return a.c < b.c; });
    pool.erase(std::unique(pool.begin(), pool.end(),
                           [](const Eval& a, const Eval& b) { return a.c == b.c; }),
               pool.end());

    // Argmin over evaluations inside [c_min, c_max]; the minimizer of a
    // plateau is reported as the plateau midpoint, ties between plateaus go
    // to the one nearest the median of the sub-threshold evaluations.
    std::vector<Eval> inside;
    std::vector<double> below_cs;
    for (const Eval& e : pool) {
        if (e.c < res.c_min || e.c > res.c_max) continue;
        inside.push_back(e);
        if (e.value < res.threshold) below_cs.push_back(e.c);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Eval& e : inside) best = std::min(best, e.value);

    const double median_c =
        below_cs.empty() ? (res.c_min + res.c_max) * 0.5
                         : median_of_sorted(below_cs);
    double best_mid = 0.0, best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < inside.size();) {
        if (inside[i].value != best) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < inside.size() && inside[j + 1].value == best) ++j;
        const double mid = (inside[i].c + inside[j].c) * 0.5;
        const double dist = std::abs(mid - median_c);
        if (dist < best_dist || (dist == best_dist && mid < best_mid)) {
            best_dist = dist;
            best_mid = mid;
        }
        i = j + 1;
    }
    res.c_star = best_mid;
    res.tn_at_c_star = best;
    return res;
}

std::vector<double> exact_breakpoints(std::span<const double> sample) {
    if (sample.size() > 2000)
        throw TooLargeError("exact_breakpoints is O(n^2); n must be <= 2000");
    if (sample.empty()) throw InsufficientDataError("empty sample");
    std::vector<double> bps;
    bps.reserve(sample.size() * (sample.size() + 1) / 2);
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i; j < sample.size(); ++j)
            bps.push_back((sample[i] + sample[j]) * 0.5);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return bps;
}

}  // namespace trendsym
