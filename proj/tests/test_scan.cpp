#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "trendsym/errors.hpp"
#include "trendsym/rng.hpp"
#include "trendsym/scan.hpp"
#include "trendsym/tn.hpp"

using namespace trendsym;

namespace {

std::vector<double> normal_sample(std::uint64_t seed, std::size_t n,
                                  double mean = 0.0, double sd = 1.0) {
    NormalSampler normals(substream(seed, 0));
    std::vector<double> out(n);
    for (double& v : out) v = mean + sd * normals.next();
    return out;
}

// Independent interval oracle: evaluates Tn on every plateau of the step
// function (midpoints enumerated with plain double loops) and reports the
// outer edges of the sub-threshold set.
struct OracleInterval {
    bool found = false;
    double c_min = 0.0;
    double c_max = 0.0;
};

OracleInterval exhaustive_interval(const std::vector<double>& sample,
                                   double threshold) {
    std::vector<double> bps;
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i; j < sample.size(); ++j)
            bps.push_back((sample[i] + sample[j]) / 2.0);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    const ShiftedTnEvaluator ev(sample);
    OracleInterval out;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const double m = (bps[k] + bps[k + 1]) / 2.0;
        if (!(m > bps[k] && m < bps[k + 1])) continue;
        double v;
        try {
            v = ev.at(m).statistic;
        } catch (const Error&) {
            continue;
        }
        if (v < threshold) {
            if (!out.found) out.c_min = bps[k];
            out.c_max = bps[k + 1];
            out.found = true;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("exact_breakpoints on tiny samples") {
    CHECK(exact_breakpoints(std::vector<double>{-1.0, 1.0}) ==
          std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(exact_breakpoints(std::vector<double>{0.0, 2.0}) ==
          std::vector<double>{0.0, 1.0, 2.0});
    CHECK_THROWS_AS(exact_breakpoints(std::vector<double>(2001, 1.0)),
                    TooLargeError);
    const auto bps = exact_breakpoints(normal_sample(5, 30));
    CHECK(std::is_sorted(bps.begin(), bps.end()));
    CHECK(std::adjacent_find(bps.begin(), bps.end()) == bps.end());
}

TEST_CASE("mirror sample shifted by a dyadic delta is found exactly") {
    // Dyadic magnitudes and shift: every intermediate quantity is exact in
    // double precision, so Tn(delta) == 0 exactly.
    const std::vector<double> mags{0.25, 0.5, 1.25, 2.0, 3.75};
    const double delta = 0.375;
    std::vector<double> sample;
    for (double m : mags) {
        sample.push_back(delta + m);
        sample.push_back(delta - m);
    }

    SUBCASE("auto grid (centered on the median = delta)") {
        const SymmetryResult r = scan(sample, 0.05);
        REQUIRE(r.status == ScanStatus::Ok);
        CHECK(r.c_star == delta);
        CHECK(r.tn_at_c_star == 0.0);
        CHECK(r.c_min <= delta);
        CHECK(r.c_max >= delta);
    }
    SUBCASE("off-center grid still pins the argmin via breakpoints") {
        GridSpec grid;
        grid.center = delta + 0.0625;
        grid.half_width = 1.0;
        const SymmetryResult r = scan(sample, 0.05, grid);
        REQUIRE(r.status == ScanStatus::Ok);
        CHECK(r.c_star == delta);
        CHECK(r.tn_at_c_star == 0.0);
    }
}

TEST_CASE("interval covers the true symmetry point of a shifted normal") {
    const std::vector<double> sample = normal_sample(101, 5000, 0.37);
    const SymmetryResult r = scan(sample, 0.05);
    REQUIRE(r.status == ScanStatus::Ok);
    CHECK(r.c_min < 0.37);
    CHECK(r.c_max > 0.37);
    CHECK(std::abs(r.c_star - 0.37) < 3.0 / std::sqrt(5000.0));
    CHECK(!r.zero_symmetric);  // 0 is ~26 standard errors away
    CHECK(r.tn_at_zero > r.threshold);
    CHECK(r.tn_at_c_star <= r.tn_at_zero);
    CHECK(r.threshold == 2.983);
    // Curve is ascending in c and matches direct evaluation where sampled.
    for (std::size_t i = 1; i < r.curve.c_grid.size(); ++i)
        CHECK(r.curve.c_grid[i] > r.curve.c_grid[i - 1]);
}

TEST_CASE("scan endpoints match the exhaustive plateau oracle exactly") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 40 + static_cast<std::size_t>(seed) * 9;
        const std::vector<double> sample = normal_sample(200 + seed, n);
        const SymmetryResult r = scan(sample, 0.05);
        const OracleInterval oracle = exhaustive_interval(sample, r.threshold);
        REQUIRE(oracle.found == (r.status == ScanStatus::Ok));
        if (!oracle.found) continue;
        // Breakpoint-exact refinement: endpoints are the same breakpoints the
        // oracle finds, bit for bit.
        CHECK(r.c_min == oracle.c_min);
        CHECK(r.c_max == oracle.c_max);
        CHECK(r.endpoint_precision == 0.0);
    }
}

TEST_CASE("mirror covariance is exact") {
    const std::vector<double> sample = normal_sample(77, 150, 0.1);
    std::vector<double> mirrored(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) mirrored[i] = -sample[i];

    const SymmetryResult a = scan(sample, 0.05);
    const SymmetryResult b = scan(mirrored, 0.05);
    REQUIRE(a.status == ScanStatus::Ok);
    REQUIRE(b.status == ScanStatus::Ok);
    CHECK(b.c_min == -a.c_max);
    CHECK(b.c_max == -a.c_min);
    CHECK(b.c_star == -a.c_star);
    CHECK(b.tn_at_c_star == a.tn_at_c_star);
    CHECK(b.tn_at_zero == a.tn_at_zero);
}

TEST_CASE("shift covariance is exact on a dyadic lattice") {
    // Values on the 1/1024 lattice, n a power of two, dyadic grid step:
    // every quantity in the scan shifts without rounding.
    SplitMix64 rng(substream(303, 0));
    std::vector<double> sample(64);
    for (double& v : sample)
        v = (static_cast<double>(rng.next() % 8193) - 4096.0) / 1024.0;
    const double d = 1459.0 / 1024.0;
    std::vector<double> shifted(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) shifted[i] = sample[i] + d;

    GridSpec grid;
    grid.points = 2049;      // mid = 1024
    grid.half_width = 1.0;   // step = 1/1024, exactly representable
    const SymmetryResult a = scan(sample, 0.05, grid);
    GridSpec grid_shifted = grid;
    const SymmetryResult b = scan(shifted, 0.05, grid_shifted);
    REQUIRE(a.status == ScanStatus::Ok);
    REQUIRE(b.status == ScanStatus::Ok);
    CHECK(b.c_min == a.c_min + d);
    CHECK(b.c_max == a.c_max + d);
    CHECK(b.c_star == a.c_star + d);
    CHECK(b.tn_at_c_star == a.tn_at_c_star);
}

TEST_CASE("intervals are nested in alpha") {
    const std::vector<double> sample = normal_sample(55, 300, 0.05);
    const SymmetryResult strict = scan(sample, 0.10);
    const SymmetryResult mid = scan(sample, 0.05);
    const SymmetryResult loose = scan(sample, 0.01);
    REQUIRE(strict.status == ScanStatus::Ok);
    REQUIRE(mid.status == ScanStatus::Ok);
    REQUIRE(loose.status == ScanStatus::Ok);
    CHECK(loose.c_min <= mid.c_min);
    CHECK(mid.c_min <= strict.c_min);
    CHECK(strict.c_max <= mid.c_max);
    CHECK(mid.c_max <= loose.c_max);
}

TEST_CASE("a disconnected plausible set is flagged with its components") {
    // Found by seeded search over small normal samples (seed 452): the
    // sub-threshold set splits in two at alpha = 0.05.
    const std::vector<double> sample{
        -0.2045126885345335,   -0.20434127320147022, 2.1806588297735616,
        1.1698880835919729,    -0.49025035939747125, -0.37743241912302217,
        0.58885975492377718,   -0.8588885286223561,  0.76114345256562332,
        0.54389047574375149,   -0.49373912436136169, -0.36947121833370267,
        0.52523540280753322};
    const SymmetryResult r = scan(sample, 0.05);
    REQUIRE(r.status == ScanStatus::Ok);
    CHECK(r.disconnected);
    CHECK(r.components.size() == 2);
    // Components are ordered and inside the outer hull.
    CHECK(r.components[0].second < r.components[1].first);
    CHECK(r.c_min <= r.components[0].first);
    CHECK(r.c_max >= r.components[1].second);
    // The outer hull still matches the exhaustive oracle.
    const OracleInterval oracle = exhaustive_interval(sample, r.threshold);
    REQUIRE(oracle.found);
    CHECK(r.c_min == oracle.c_min);
    CHECK(r.c_max == oracle.c_max);
}

TEST_CASE("a violently skewed sample has no plausible symmetry point") {
    NormalSampler normals(substream(404, 0));
    std::vector<double> sample(4000);
    for (double& v : sample) v = std::exp(2.0 * normals.next());
    const SymmetryResult r = scan(sample, 0.05);
    CHECK(r.status == ScanStatus::NoSymmetryPoint);
    CHECK(!r.zero_symmetric);
    CHECK(!r.curve.c_grid.empty());
}

TEST_CASE("narrow grids expand until the interval fits") {
    const std::vector<double> sample = normal_sample(21, 1000);
    GridSpec narrow;
    narrow.span_sigma_multiple = 0.5;  // far too narrow at first
    const SymmetryResult a = scan(sample, 0.05, narrow);
    const SymmetryResult b = scan(sample, 0.05);  // default span
    REQUIRE(a.status == ScanStatus::Ok);
    REQUIRE(b.status == ScanStatus::Ok);
    CHECK(!a.grid_truncated);
    // Both locate the same breakpoints.
    CHECK(a.c_min == b.c_min);
    CHECK(a.c_max == b.c_max);
}

TEST_CASE("two points cannot be rejected anywhere: truncation is flagged") {
    const std::vector<double> pair{4.0, 6.0};
    const SymmetryResult r = scan(pair, 0.05);
    CHECK(r.status == ScanStatus::Ok);
    CHECK(r.grid_truncated);  // plausible at every c, even after expansions
}

TEST_CASE("degenerate inputs raise typed errors") {
    CHECK_THROWS_AS(scan(std::vector<double>{0.0, 0.0, 0.0}, 0.05),
                    AllZerosError);
    CHECK_THROWS_AS(scan(std::vector<double>{3.0, 3.0, 3.0}, 0.05),
                    InsufficientDataError);  // no spread, no grid
    CHECK_THROWS_AS(scan(normal_sample(1, 100), 0.6), OutOfTableRangeError);
}
