#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "trendsym/tn.hpp"

namespace trendsym {

// Candidate grid for Tn(c). The automatic grid is centered on the sample
// median with half-width span_sigma_multiple * sigma / sqrt(n); explicit
// center/half_width override that. The point count is forced odd so the grid
// negates exactly under sample mirroring.
struct GridSpec {
    std::size_t points = 2001;
    double span_sigma_multiple = 30.0;
    std::optional<double> center;
    std::optional<double> half_width;
    int max_expansions = 6;           // doubling of half_width while the
                                      // sub-threshold set touches the edge
    double refine_divisor = 1024.0;   // sweep resolution = grid step / this
    std::size_t exact_refine_max_n = 4000;  // breakpoint-exact refinement cap
};

struct TnCurve {
    std::vector<double> c_grid;     // ascending
    std::vector<double> tn_values;  // same length
    double threshold = 0.0;
};

enum class ScanStatus { Ok, NoSymmetryPoint };

struct SymmetryResult {
    double alpha = 0.0;
    double threshold = 0.0;
    ScanStatus status = ScanStatus::NoSymmetryPoint;

    // Valid when status == Ok.
    double c_min = 0.0;  // infimum of the plausible set
    double c_max = 0.0;  // supremum
    double c_star = 0.0; // most plausible symmetry point (argmin of Tn(c))
    double tn_at_c_star = 0.0;

    double tn_at_zero = 0.0;
    bool zero_symmetric = false;  // tn_at_zero < threshold

    // Sub-threshold grid points formed more than one contiguous run; the
    // reported (c_min, c_max) is the outer hull and `components` lists the
    // runs at grid resolution.
    bool disconnected = false;
    std::vector<std::pair<double, double>> components;

    bool grid_truncated = false;      // still touching the edge after all
                                      // expansions
    double endpoint_precision = 0.0;  // 0 = breakpoint-exact endpoints
    std::size_t skipped_grid_points = 0;

    TnCurve curve;
};

// Locates the symmetry interval (c_min, c_max) = (infimum, supremum) of
// { c : Tn(c) < T(alpha) } and the most plausible symmetry point c_star
// minimizing Tn(c) in it. Tn(c) is piecewise constant between pairwise
// midpoints of the sample, so interval endpoints are breakpoints of that
// step function: for n <= exact_refine_max_n they are located exactly by
// enumerating breakpoints near the grid crossing; for larger n by a uniform
// sweep at step/refine_divisor resolution (the reported precision).
//
// status NoSymmetryPoint means no grid point was sub-threshold; that is a
// legitimate statistical outcome, not a failure.
SymmetryResult scan(std::span<const double> sample, double alpha,
                    const GridSpec& grid = {});

// Sorted distinct pairwise midpoints {(x_i+x_j)/2 : i <= j}. Tn(c) is
// constant on each open interval between consecutive breakpoints. O(n^2);
// throws TooLargeError for n > 2000.
std::vector<double> exact_breakpoints(std::span<const double> sample);

}  // namespace trendsym
