#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "stoqbench/fit.hpp"
#include "stoqbench/harness.hpp"

using namespace stoq;

TEST_CASE("estimate_cost closed cases") {
    CHECK(estimate_cost(1000, 2000, 0.72) == doctest::Approx(2.7777777777777778e6));
    CHECK(estimate_cost(7, 13, 1.0) == doctest::Approx(91.0));
    CHECK(estimate_cost(1, 1, 0.5) == doctest::Approx(2.0));
    CHECK_THROWS_AS(estimate_cost(10, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_cost(10, 10, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(estimate_cost(0, 10, 0.5), std::invalid_argument);
}

TEST_CASE("estimate_cost monotonicity") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const long w = 1 + static_cast<long>(uniform_double(rng) * 1000);
        const long t = 1 + static_cast<long>(uniform_double(rng) * 1000);
        const double r = 0.05 + uniform_double(rng) * 0.9;
        CHECK(estimate_cost(w + 1, t, r) > estimate_cost(w, t, r));
        CHECK(estimate_cost(w, t + 1, r) > estimate_cost(w, t, r));
        CHECK(estimate_cost(w, t, std::min(1.0, r + 0.05)) < estimate_cost(w, t, r));
    }
}

TEST_CASE("fit_linear recovers an exact line") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y{3.0, 5.0, 7.0, 9.0};
    const LinearFit fit = fit_linear(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : fit.residuals) CHECK(std::abs(r) <= 1e-12);

    CHECK_THROWS_AS(fit_linear({1.0}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_linear({1.0, 1.0}, {2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("measured success rate is independent of the thread count") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(30));
    const Schedule schedule = linear_schedule(200, default_dt(dw));
    const double serial = measure_success_rate(dw, schedule, 50, 24, 99, 1);
    const double threaded = measure_success_rate(dw, schedule, 50, 24, 99, 4);
    CHECK(serial == threaded);
}

TEST_CASE("calibration flags a trivially easy instance at one walker") {
    // Free field: V = 0 everywhere, so every site is a global minimizer and
    // every trial succeeds; calibration bottoms out at walkers = 1.
    const ProblemInstance ff = ProblemInstance::free_field(10);
    const Schedule schedule = linear_schedule(50, 0.2);
    const CalibrationResult result =
        calibrate_walkers(ff, schedule, Band{0.70, 0.75}, 20, 4);
    CHECK(result.walkers == 1);
    CHECK(result.success_rate == 1.0);
    CHECK(result.flagged);
    CHECK(result.reason.find("above band") != std::string::npos);
}

TEST_CASE("calibration is deterministic and respects its band when unflagged") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(40));
    // Short, fast anneal: success is walker-limited, so the search engages.
    const Schedule schedule = linear_schedule(150, 0.01);
    const CalibrationResult a =
        calibrate_walkers(dw, schedule, Band{0.3, 0.9}, 20, 1234, 1 << 14);
    const CalibrationResult b =
        calibrate_walkers(dw, schedule, Band{0.3, 0.9}, 20, 1234, 1 << 14);
    CHECK(a.walkers == b.walkers);
    CHECK(a.success_rate == b.success_rate);
    CHECK(a.flagged == b.flagged);
    if (!a.flagged) {
        CHECK(a.success_rate >= 0.3);
        CHECK(a.success_rate <= 0.9);
    }
    CHECK(a.trials == 20);
}

TEST_CASE("calibration validates its inputs") {
    const ProblemInstance ff = ProblemInstance::free_field(8);
    const Schedule schedule = linear_schedule(10, 0.1);
    CHECK_THROWS_AS(calibrate_walkers(ff, schedule, Band{0.7, 0.75}, 19, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_walkers(ff, schedule, Band{0.8, 0.75}, 20, 1),
                    std::invalid_argument);
}

TEST_CASE("ssmc cost series: metadata, determinism, failure capture") {
    SeriesOptions options;
    options.schedule_steps = 150;
    options.repetitions = 2;
    options.trials_per_rep = 20;
    options.dt = 0.01;
    options.walker_cap = 1 << 12;

    const SsmcSeries series = ssmc_cost_series({3, 30, 40}, options, 2024);
    // n = 3 violates the default factory precondition: recorded, skipped.
    REQUIRE(series.failures.size() == 1);
    CHECK(series.failures[0].find("n=3") != std::string::npos);
    REQUIRE(series.points.size() == 2);
    for (const CostPoint& p : series.points) {
        CHECK(p.cost > 0.0);
        CHECK(p.std_dev >= 0.0);
        CHECK(p.walkers >= 1);
    }
    CHECK(series.options.schedule_steps == 150);

    const SsmcSeries again = ssmc_cost_series({3, 30, 40}, options, 2024);
    REQUIRE(again.points.size() == series.points.size());
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        CHECK(again.points[i].cost == series.points[i].cost);
        CHECK(again.points[i].walkers == series.points[i].walkers);
    }
}

TEST_CASE("spike comparison requires three valid points") {
    SpikeOptions options;
    options.trials = 20;
    options.steps_floor = 60;
    options.gap_coarse_points = 21;
    CHECK_THROWS_AS(spike_comparison({16, 20}, 0.4, 10, 1, options),
                    std::runtime_error);
}
