#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trendsym {

struct CriticalRow {
    double cumulative_probability;
    double percentage_point;
};

// Upper percentage points of the limiting law of Tn under symmetry,
// the distribution of  integral_0^1 W(t)^2 / t dt  for a standard Wiener
// process W. The embedded table is cross-checked by simulate_limit_law().
class CriticalTable {
public:
    static const CriticalTable& asymptotic();

    struct Lookup {
        double point = 0.0;
        bool interpolated = false;
    };

    // Upper alpha-level point, i.e. the (1-alpha) cumulative quantile.
    // Exact rows are returned verbatim; probabilities between rows use
    // monotone piecewise-linear interpolation. Throws OutOfTableRangeError
    // when 1-alpha is outside [rows.front(), rows.back()].
    Lookup upper_point(double alpha) const;

    std::span<const CriticalRow> rows() const { return rows_; }

private:
    explicit CriticalTable(std::vector<CriticalRow> rows);
    std::vector<CriticalRow> rows_;  // probabilities strictly increasing
};

// Monte Carlo configuration for the limiting-law simulation.
//
// Each path discretizes W on a uniform midpoint-rule grid over
// [small_t_cut, 1]; the (0, small_t_cut] piece is replaced by its exact
// expectation small_t_cut (E[W(t)^2/t] = 1). small_t_cut <= 0 means
// 1/time_steps.
struct McConfig {
    std::size_t paths = 100000;
    std::size_t time_steps = 4096;
    std::uint64_t seed = 1;
    double small_t_cut = 0.0;
};

struct QuantileEstimate {
    double probability = 0.0;
    double value = 0.0;
    double stderr_estimate = 0.0;  // batch-means standard error
};

struct LimitSimulation {
    std::vector<double> integrals;  // one per path, path-index order
    double mean = 0.0;
};

// Simulates the limiting functional. Deterministic for a given seed: path i
// always consumes substream(seed, i), regardless of thread count. With the
// same seed, the first P paths of a larger run reproduce a P-path run.
LimitSimulation simulate_limit_law(const McConfig& cfg);

// Type-7 empirical quantiles of simulated integrals, with a batch-means
// standard error (32 contiguous batches).
std::vector<QuantileEstimate> quantiles_from(const LimitSimulation& sim,
                                             std::span<const double> probabilities);

// One-call convenience: simulate then extract quantiles.
std::vector<QuantileEstimate> simulate_quantile(std::span<const double> probabilities,
                                                const McConfig& cfg);

// Empirical quantiles of tn over `replications` i.i.d. N(0,1) samples of
// size n. Replication i consumes substream(seed, i).
std::vector<QuantileEstimate> simulate_finite_sample_quantile(
    std::size_t n, std::span<const double> probabilities,
    std::size_t replications, std::uint64_t seed);

}  // namespace trendsym
