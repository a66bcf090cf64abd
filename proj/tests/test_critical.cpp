#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "trendsym/critical_values.hpp"
#include "trendsym/errors.hpp"

using namespace trendsym;

TEST_CASE("tabulated upper points are returned verbatim") {
    const auto& table = CriticalTable::asymptotic();
    CHECK(table.upper_point(0.05).point == 2.983);
    CHECK(table.upper_point(0.05).interpolated == false);
    CHECK(table.upper_point(0.01).point == 4.909);
    CHECK(table.upper_point(0.10).point == 2.200);
    CHECK(table.upper_point(0.50).point == 0.659);
    CHECK(table.upper_point(0.25).point == 1.258);
    CHECK(table.upper_point(0.15).point == 1.768);
    CHECK(table.upper_point(0.025).point == 3.798);
    CHECK(table.upper_point(0.005).point == 5.768);
    CHECK(table.upper_point(0.001).point == 7.803);
    CHECK(table.rows().size() == 9);
}

TEST_CASE("between rows the lookup interpolates monotonically") {
    const auto& table = CriticalTable::asymptotic();
    const auto mid = table.upper_point(0.07);  // p = 0.93, between .90 and .95
    CHECK(mid.interpolated);
    CHECK(mid.point ==
          doctest::Approx(2.200 + 0.6 * (2.983 - 2.200)).epsilon(1e-12));

    double prev = table.upper_point(0.49).point;
    for (double alpha : {0.4, 0.3, 0.2, 0.12, 0.08, 0.06, 0.03, 0.02, 0.007,
                         0.003, 0.0015}) {
        const double point = table.upper_point(alpha).point;
        CHECK(point > prev);  // smaller alpha, larger upper point
        prev = point;
    }
}

TEST_CASE("levels outside the table raise OutOfTableRange") {
    const auto& table = CriticalTable::asymptotic();
    CHECK_THROWS_AS(table.upper_point(0.6), OutOfTableRangeError);
    CHECK_THROWS_AS(table.upper_point(0.0005), OutOfTableRangeError);
    CHECK_THROWS_AS(table.upper_point(0.0), std::invalid_argument);
    CHECK_THROWS_AS(table.upper_point(1.0), std::invalid_argument);
}

TEST_CASE("limit-law simulation: mean one and monotone quantiles") {
    McConfig cfg;
    cfg.paths = 6000;
    cfg.time_steps = 512;
    cfg.seed = 7;
    const LimitSimulation sim = simulate_limit_law(cfg);
    REQUIRE(sim.integrals.size() == cfg.paths);

    // E integral = 1 exactly; 6000 paths put the sample mean well within 5%.
    CHECK(sim.mean == doctest::Approx(1.0).epsilon(0.05));
    for (double v : sim.integrals) CHECK(v > 0.0);

    const std::vector<double> probs{0.5, 0.75, 0.9, 0.95, 0.99};
    const auto qs = quantiles_from(sim, probs);
    for (std::size_t i = 1; i < qs.size(); ++i)
        CHECK(qs[i].value > qs[i - 1].value);

    // Ballpark agreement with the embedded table at this cheap size.
    CHECK(qs[0].value == doctest::Approx(0.659).epsilon(0.10));
    CHECK(qs[3].value == doctest::Approx(2.983).epsilon(0.10));
    CHECK(qs[0].stderr_estimate > 0.0);
}

TEST_CASE("simulation is deterministic and prefix-stable in the path count") {
    McConfig small;
    small.paths = 500;
    small.time_steps = 128;
    small.seed = 42;
    const auto a = simulate_limit_law(small);
    const auto b = simulate_limit_law(small);
    CHECK(a.integrals == b.integrals);

    McConfig big = small;
    big.paths = 1000;
    const auto c = simulate_limit_law(big);
    for (std::size_t i = 0; i < small.paths; ++i)
        CHECK(c.integrals[i] == a.integrals[i]);
}

TEST_CASE("doubling the paths moves the 0.95 quantile by less than 2 SE") {
    McConfig cfg;
    cfg.paths = 20000;
    cfg.time_steps = 256;
    cfg.seed = 11;
    const std::vector<double> p95{0.95};
    const auto q1 = simulate_quantile(p95, cfg);
    McConfig doubled = cfg;
    doubled.paths = 2 * cfg.paths;
    const auto q2 = simulate_quantile(p95, doubled);
    CHECK(std::abs(q2[0].value - q1[0].value) <
          2.0 * (q1[0].stderr_estimate + q2[0].stderr_estimate));
}

TEST_CASE("small_t_cut default and override behave") {
    McConfig cfg;
    cfg.paths = 200;
    cfg.time_steps = 64;
    cfg.seed = 3;
    const auto def = simulate_limit_law(cfg);
    cfg.small_t_cut = 1.0 / 64.0;
    const auto expl = simulate_limit_law(cfg);
    CHECK(def.integrals == expl.integrals);
    cfg.small_t_cut = 1.5;
    CHECK_THROWS_AS(simulate_limit_law(cfg), std::invalid_argument);
}

TEST_CASE("finite-sample null simulation") {
    const std::vector<double> probs{0.5, 0.95};
    const auto qs = simulate_finite_sample_quantile(100, probs, 2000, 17);
    REQUIRE(qs.size() == 2);
    CHECK(qs[0].value > 0.0);
    CHECK(qs[1].value > qs[0].value);
    // "Fast convergence": even at n = 100 the 95% point sits near 2.983.
    CHECK(qs[1].value == doctest::Approx(2.983).epsilon(0.15));

    const std::vector<double> half{0.5};
    const auto tiny = simulate_finite_sample_quantile(10, half, 500, 23);
    CHECK(tiny[0].value > 0.0);

    CHECK_THROWS_AS(simulate_finite_sample_quantile(9, probs, 100, 1),
                    std::invalid_argument);
}

TEST_CASE("finite-sample n=100 quantile regression pin") {
    // Deterministic by seed; this is a regression anchor, not an assertion
    // about the limiting law.
    const std::vector<double> p95{0.95};
    const auto q = simulate_finite_sample_quantile(100, p95, 10000, 2024);
    CHECK(q[0].value == 2.9624536224181823);
}
