#include "trendsym/critical_values.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel_for.hpp"
#include "trendsym/errors.hpp"
#include "trendsym/numeric.hpp"
#include "trendsym/rng.hpp"
#include "trendsym/tn.hpp"

namespace trendsym {

CriticalTable::CriticalTable(std::vector<CriticalRow> rows)
    : rows_(std::move(rows)) {}

const CriticalTable& CriticalTable::asymptotic() {
    static const CriticalTable table(std::vector<CriticalRow>{
        {0.50, 0.659},
        {0.75, 1.258},
        {0.85, 1.768},
        {0.90, 2.200},
        {0.95, 2.983},
        {0.975, 3.798},
        {0.990, 4.909},
        {0.995, 5.768},
        {0.999, 7.803},
    });
    return table;
}

CriticalTable::Lookup CriticalTable::upper_point(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0,1)");
    const double p = 1.0 - alpha;
    constexpr double kMatchTol = 1e-9;
    if (p < rows_.front().cumulative_probability - kMatchTol ||
        p > rows_.back().cumulative_probability + kMatchTol)
        throw OutOfTableRangeError("1-alpha outside tabulated range");

    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (std::abs(p - rows_[i].cumulative_probability) <= kMatchTol)
            return Lookup{rows_[i].percentage_point, false};
    }
    // Strictly between two rows: linear interpolation in probability.
    std::size_t hi = 1;
    while (rows_[hi].cumulative_probability < p) ++hi;
    const CriticalRow& a = rows_[hi - 1];
    const CriticalRow& b = rows_[hi];
    const double w = (p - a.cumulative_probability) /
                     (b.cumulative_probability - a.cumulative_probability);
    return Lookup{a.percentage_point + w * (b.percentage_point - a.percentage_point),
                  true};
}

LimitSimulation simulate_limit_law(const McConfig& cfg) {
    if (cfg.paths < 1) throw std::invalid_argument("paths must be >= 1");
    if (cfg.time_steps < 2) throw std::invalid_argument("time_steps must be >= 2");
    const std::size_t steps = cfg.time_steps;
    const double t0 = cfg.small_t_cut > 0.0
                          ? cfg.small_t_cut
                          : 1.0 / static_cast<double>(steps);
    if (!(t0 > 0.0 && t0 < 1.0))
        throw std::invalid_argument("small_t_cut must be in (0,1)");

    const double dt = (1.0 - t0) / static_cast<double>(steps);
    const double half_sd = std::sqrt(dt / 2.0);  // increment to/from midpoint
    const double sd0 = std::sqrt(t0);

    // Cell weights dt/midpoint(k), shared read-only across threads.
    std::vector<double> weight(steps);
    for (std::size_t k = 0; k < steps; ++k)
        weight[k] = dt / (t0 + (static_cast<double>(k) + 0.5) * dt);

    LimitSimulation sim;
    sim.integrals.assign(cfg.paths, 0.0);
    detail::parallel_for(cfg.paths, [&](std::size_t path) {
        NormalSampler normals(substream(cfg.seed, path));
        double w = sd0 * normals.next();  // W(t0)
        double integral = t0;  // exact mean of the (0, t0] piece
        for (std::size_t k = 0; k < steps; ++k) {
            w += half_sd * normals.next();           // to cell midpoint
            integral += w * w * weight[k];
            w += half_sd * normals.next();           // to cell right edge
        }
        sim.integrals[path] = integral;
    });

    KahanSum total;
    for (double v : sim.integrals) total.add(v);
    sim.mean = total.value() / static_cast<double>(cfg.paths);
    return sim;
}

namespace {

std::vector<QuantileEstimate> quantiles_with_batch_se(
    std::span<const double> values, std::span<const double> probabilities) {
    for (double p : probabilities)
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("probability outside (0,1)");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    constexpr std::size_t kBatches = 32;
    const std::size_t batches = std::min(kBatches, values.size());
    std::vector<std::vector<double>> batch(batches);
    const std::size_t per = values.size() / batches;
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t lo = b * per;
        const std::size_t hi = b + 1 == batches ? values.size() : lo + per;
        batch[b].assign(values.begin() + static_cast<std::ptrdiff_t>(lo),
                        values.begin() + static_cast<std::ptrdiff_t>(hi));
        std::sort(batch[b].begin(), batch[b].end());
    }

    std::vector<QuantileEstimate> out;
    out.reserve(probabilities.size());
    for (double p : probabilities) {
        QuantileEstimate est;
        est.probability = p;
        est.value = quantile_type7(sorted, p);
        if (batches >= 2) {
            KahanSum s, s2;
            for (const auto& b : batch) {
                const double q = quantile_type7(b, p);
                s.add(q);
                s2.add(q * q);
            }
            const double nb = static_cast<double>(batches);
            const double var =
                std::max(0.0, (s2.value() - s.value() * s.value() / nb) / (nb - 1.0));
            est.stderr_estimate = std::sqrt(var / nb);
        }
        out.push_back(est);
    }
    return out;
}

}  // namespace

std::vector<QuantileEstimate> quantiles_from(const LimitSimulation& sim,
                                             std::span<const double> probabilities) {
    return quantiles_with_batch_se(sim.integrals, probabilities);
}

std::vector<QuantileEstimate> simulate_quantile(std::span<const double> probabilities,
                                                const McConfig& cfg) {
    return quantiles_from(simulate_limit_law(cfg), probabilities);
}

std::vector<QuantileEstimate> simulate_finite_sample_quantile(
    std::size_t n, std::span<const double> probabilities,
    std::size_t replications, std::uint64_t seed) {
    if (n < 10) throw std::invalid_argument("finite-sample simulation needs n >= 10");
    if (replications < 2) throw std::invalid_argument("need >= 2 replications");

    std::vector<double> stats(replications, 0.0);
    detail::parallel_for(replications, [&](std::size_t rep) {
        NormalSampler normals(substream(seed, rep));
        std::vector<double> sample(n);
        for (double& x : sample) x = normals.next();
        stats[rep] = tn(sample).statistic;
    });
    return quantiles_with_batch_se(stats, probabilities);
}

}  // namespace trendsym
