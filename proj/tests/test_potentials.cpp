#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stoqbench/potentials.hpp"

using namespace stoq;

namespace {

const DoubleWellParams kDefault100 = default_double_well(100);

// Grid-scan argmin set (values within tol of the minimum).
std::vector<int> argmin_sites(const std::vector<double>& values, double rel_tol) {
    const double vmin = *std::min_element(values.begin(), values.end());
    const double tol = rel_tol * (1.0 + std::abs(vmin));
    std::vector<int> sites;
    for (std::size_t w = 0; w < values.size(); ++w) {
        if (values[w] - vmin <= tol) sites.push_back(static_cast<int>(w));
    }
    return sites;
}

}  // namespace

TEST_CASE("quartic well depth at both minima") {
    // Stationary-point value -omega^2 delta^2 / (32 n^2) = -0.21125 at the
    // n = 100 defaults.
    const double depth = -kDefault100.omega * kDefault100.omega * kDefault100.delta *
                         kDefault100.delta / (32.0 * 100.0 * 100.0);
    CHECK(depth == doctest::Approx(-0.21125).epsilon(1e-12));
    CHECK(v_quartic(50, kDefault100) == doctest::Approx(depth).epsilon(1e-12));
    CHECK(v_quartic(60, kDefault100) == doctest::Approx(depth).epsilon(1e-12));
    CHECK(std::abs(v_quartic(50, kDefault100) - v_quartic(60, kDefault100)) <= 1e-12);
}

TEST_CASE("quartic grid scan finds exactly the two wells") {
    std::vector<double> values;
    for (int w = 0; w <= 100; ++w) values.push_back(v_quartic(w, kDefault100));
    const auto sites = argmin_sites(values, 1e-9);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0] == 50);
    CHECK(sites[1] == 60);
}

TEST_CASE("quartic vanishes at the between-well hilltop x = 0") {
    // x = 0 at w = n (1/2 + delta/2) = 55 for the n = 100 defaults.
    CHECK(v_quartic(55, kDefault100) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(v_quartic(55, kDefault100)) <= 1e-15);
}

TEST_CASE("quartic rejects out-of-range weights") {
    CHECK_THROWS_AS(v_quartic(-1, kDefault100), std::invalid_argument);
    CHECK_THROWS_AS(v_quartic(101, kDefault100), std::invalid_argument);
}

TEST_CASE("linear tilt values") {
    for (int w : {0, 17, 50, 100}) {
        CHECK(v_linear(w, 0.5, kDefault100) == doctest::Approx(0.0).epsilon(1e-15));
    }
    // tau * (-0.05) at w = 50, s = 0.
    CHECK(v_linear(50, 0.0, kDefault100) ==
          doctest::Approx(-0.15811388300841897).epsilon(1e-12));
    // Tilt favors the right well for s > 1/2.
    CHECK(v_linear(60, 1.0, kDefault100) ==
          doctest::Approx(-0.15811388300841897).epsilon(1e-12));
}

TEST_CASE("fictitious potential values and symmetry") {
    CHECK(v_fict(50, 100) == 0.0);
    // y = 1/2: -0.005 + 0.5 + 0.125 + 0.0625.
    CHECK(v_fict(100, 100) == doctest::Approx(0.6825).epsilon(1e-13));
    for (int k = 0; k <= 50; ++k) {
        CHECK(std::abs(v_fict(50 + k, 100) - v_fict(50 - k, 100)) <= 1e-15);
    }
}

TEST_CASE("total potential composition at s = 1/2") {
    // V_l vanishes and V_fict(n/2) = 0, so v_total(n/2) is the well depth.
    CHECK(v_total(50, 0.5, kDefault100) == doctest::Approx(-0.21125).epsilon(1e-12));
}

TEST_CASE("walker-visible landscape differs from the quartic alone") {
    // Grid-scan oracle: at s = 1/2 the -V_fict term tilts the landscape so
    // the global minimum moves to the right well site, no longer degenerate
    // with the left well.
    std::vector<double> values;
    for (int w = 0; w <= 100; ++w) values.push_back(v_total(w, 0.5, kDefault100));
    const auto sites = argmin_sites(values, 1e-9);
    REQUIRE(sites.size() == 1);
    CHECK(sites[0] == 60);
    CHECK(values[60] == doctest::Approx(-0.231254).epsilon(1e-6));
    CHECK(values[60] < values[50]);
}

TEST_CASE("tilt drops out of v_total at s = 1/2") {
    const DoubleWellParams no_tilt(100, kDefault100.omega, kDefault100.delta, 0.0);
    for (int w = 0; w <= 100; w += 7) {
        CHECK(v_total(w, 0.5, kDefault100) == v_total(w, 0.5, no_tilt));
    }
}

TEST_CASE("well ordering flips across s = 1/2") {
    const int left = kDefault100.left_well_site();
    const int right = kDefault100.right_well_site();
    const auto well_energy = [&](int w, double s) {
        return v_quartic(w, kDefault100) + v_linear(w, s, kDefault100);
    };
    CHECK(well_energy(left, 0.25) < well_energy(right, 0.25));
    CHECK(well_energy(left, 0.75) > well_energy(right, 0.75));
}

TEST_CASE("quartic plus tilt has two equal minima at s = 1/2 for integral delta n") {
    // n = 200 with delta = 0.1 puts the right well exactly on-grid at 120.
    const DoubleWellParams p(200, 2600.0, 0.1, 1.0);
    std::vector<double> values;
    for (int w = 0; w <= 200; ++w) {
        values.push_back(v_quartic(w, p) + v_linear(w, 0.5, p));
    }
    const auto sites = argmin_sites(values, 1e-9);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0] == 100);
    CHECK(sites[1] == 120);
    CHECK(std::abs(values[100] - values[120]) <=
          1e-9 * (1.0 + std::abs(values[100])));
}

TEST_CASE("spike values") {
    const SpikeParams p(256, 0.4);
    CHECK(v_spike(0, p) == 0.0);
    // 256^0.4 = 9.18958683997628; barrier window is w in [60, 68].
    CHECK(v_spike(64, p) == doctest::Approx(73.18958683997628).epsilon(1e-13));
    CHECK(v_spike(64, p) ==
          doctest::Approx(64.0 + std::exp(0.4 * std::log(256.0))).epsilon(1e-14));
    CHECK(v_spike(200, p) == 200.0);
}

TEST_CASE("spike dominates the ramp only inside the barrier window") {
    const SpikeParams p(256, 0.4);
    int barrier_sites = 0;
    for (int w = 0; w <= 256; ++w) {
        CHECK(v_spike(w, p) >= static_cast<double>(w));
        if (v_spike(w, p) > w) {
            ++barrier_sites;
            CHECK(std::abs(w - 64.0) < p.barrier_height() / 2.0);
        }
    }
    // Window |w - 64| < 4.594...: sites 60..68.
    CHECK(barrier_sites == 9);
}

TEST_CASE("spike global minimum is weight zero") {
    const SpikeParams p(256, 0.4);
    for (int w = 1; w <= 256; ++w) {
        CHECK(v_spike(w, p) > v_spike(0, p));
    }
}
