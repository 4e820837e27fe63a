#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stoqbench/io.hpp"
#include "stoqbench/ssmc.hpp"
#include "stoqbench/tridiagonal.hpp"

using namespace stoq;

TEST_CASE("zero offset gives neither death nor spawn") {
    const ProblemInstance ff = ProblemInstance::free_field(20);
    const StepProbabilities p = substochastic_probabilities(7, 0.3, ff, 0.0, 0.1);
    CHECK(p.death == 0.0);
    CHECK(p.spawn == 0.0);
    CHECK(p.up + p.down == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(p.stay == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("hop mass equals dt for the double well at any n") {
    for (int n : {7, 100}) {
        const ProblemInstance dw = n >= 4
            ? ProblemInstance::double_well(default_double_well(std::max(n, 4)))
            : ProblemInstance::free_field(n);
        const StepProbabilities p =
            substochastic_probabilities(n / 2, 0.5, dw, 1000.0, 0.1,
                                        ClampPolicy::saturate);
        CHECK(p.up + p.down == doctest::Approx(0.1).epsilon(1e-14));
    }
}

TEST_CASE("death probability is dt times the positive offset") {
    const ProblemInstance ff = ProblemInstance::free_field(10);
    // V = 0, threshold -0.5: offset +0.5.
    const StepProbabilities p = substochastic_probabilities(5, 0.0, ff, -0.5, 0.1);
    CHECK(p.death == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(p.spawn == 0.0);
    // Threshold +0.5: spawn side.
    const StepProbabilities q = substochastic_probabilities(5, 0.0, ff, 0.5, 0.1);
    CHECK(q.spawn == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(q.death == 0.0);
}

TEST_CASE("non-spawn branches form an exact simplex") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(40));
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = static_cast<int>(uniform_double(rng) * 41);
        const double s = uniform_double(rng);
        const double threshold = (uniform_double(rng) - 0.5) * 20.0;
        const StepProbabilities p = substochastic_probabilities(
            w, s, dw, threshold, 0.01, ClampPolicy::saturate);
        for (double v : {p.up, p.down, p.death, p.stay}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(p.up + p.down + p.death + p.stay == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("boundary weights cannot hop off the lattice") {
    const ProblemInstance ff = ProblemInstance::free_field(12);
    CHECK(substochastic_probabilities(0, 0.5, ff, 0.0, 0.2).down == 0.0);
    CHECK(substochastic_probabilities(12, 0.5, ff, 0.0, 0.2).up == 0.0);
}

TEST_CASE("strict policy names the offending probability") {
    const ProblemInstance ff = ProblemInstance::free_field(10);
    // Hop mass 3 > 1: always an error, either policy.
    CHECK_THROWS_WITH_AS(substochastic_probabilities(5, 0.5, ff, 0.0, 3.0),
                         doctest::Contains("p_up + p_down"), std::runtime_error);
    CHECK_THROWS_AS(
        substochastic_probabilities(5, 0.5, ff, 0.0, 3.0, ClampPolicy::saturate),
        std::runtime_error);
    // Death beyond the available row mass: error in strict, saturated otherwise.
    CHECK_THROWS_WITH_AS(substochastic_probabilities(5, 0.5, ff, -1000.0, 0.1),
                         doctest::Contains("p_death"), std::runtime_error);
    const StepProbabilities p =
        substochastic_probabilities(5, 0.5, ff, -1000.0, 0.1, ClampPolicy::saturate);
    CHECK(p.death == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(p.stay == doctest::Approx(0.0).epsilon(1e-14));
    // Spawn expectation beyond one clone: error in strict only.
    CHECK_THROWS_WITH_AS(substochastic_probabilities(5, 0.5, ff, 1000.0, 0.1),
                         doctest::Contains("p_spawn"), std::runtime_error);
}

TEST_CASE("zero potential with zero threshold freezes the population size") {
    const ProblemInstance ff = ProblemInstance::free_field(20);
    WalkerPopulation pop = initialize_population(ff, 500, 0.1, 42);
    CHECK(pop.threshold == 0.0);
    for (int t = 0; t < 200; ++t) {
        pop = step_population(std::move(pop), 0.5, ff);
        CHECK(pop.size() == 500);
    }
}

TEST_CASE("a walker at the boundary never leaves the lattice") {
    const ProblemInstance ff = ProblemInstance::free_field(6);
    WalkerPopulation pop;
    pop.weights.assign(200, 0);
    pop.threshold = 0.0;
    pop.dt = 0.3;
    pop.target_size = 200;
    pop.rng.seed(7);
    for (int t = 0; t < 100; ++t) {
        pop = step_population(std::move(pop), 0.0, ff);
        for (int w : pop.weights) {
            CHECK(w >= 0);
            CHECK(w <= 6);
        }
    }
}

TEST_CASE("all-death step raises extinction") {
    const ProblemInstance ff = ProblemInstance::free_field(8);
    WalkerPopulation pop;
    pop.weights.assign(3, 4);
    pop.threshold = -1e9;  // everything far above threshold
    pop.dt = 0.25;
    pop.target_size = 3;
    pop.rng.seed(11);
    // Death probability 0.75 per walker; all three die within a few sweeps.
    CHECK_THROWS_AS(
        [&] {
            for (int t = 0; t < 50; ++t) {
                pop = step_population(std::move(pop), 0.0, ff);
            }
        }(),
        ExtinctionError);
}

TEST_CASE("update_threshold is the mean energy plus logarithmic feedback") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(100));
    WalkerPopulation pop;
    pop.weights = {50, 52, 55, 60};
    pop.dt = 0.1;
    pop.target_size = 4;
    double mean = 0.0;
    for (int w : pop.weights) mean += dw.potential(w, 0.5);
    mean /= 4.0;

    CHECK(update_threshold(pop, dw, 0.5) == doctest::Approx(mean).epsilon(1e-14));

    pop.target_size = 8;  // size = target / 2
    CHECK(update_threshold(pop, dw, 0.5) ==
          doctest::Approx(mean + std::log(2.0)).epsilon(1e-13));

    pop.target_size = 2;  // size = 2 * target
    CHECK(update_threshold(pop, dw, 0.5) ==
          doctest::Approx(mean - std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("tv distance closed cases") {
    HammingDistribution d;
    d.weights = {0.5, 0.5};
    CHECK(tv_distance(std::vector<long>{1, 1}, d) == doctest::Approx(0.0));
    CHECK(tv_distance(std::vector<long>{3, 1}, d) == doctest::Approx(0.25));
    HammingDistribution point;
    point.weights = {1.0, 0.0};
    CHECK(tv_distance(std::vector<long>{0, 7}, point) == doctest::Approx(1.0));
    CHECK_THROWS_AS(tv_distance(std::vector<long>{0, 0}, point),
                    std::invalid_argument);
}

TEST_CASE("identical seeds reproduce bit-identical trial records") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(40));
    const Schedule schedule = linear_schedule(300, default_dt(dw));
    AnnealOptions options;
    options.snapshot_stride = 100;
    const TrialRecord a = run_anneal(dw, schedule, 200, 777, options);
    const TrialRecord b = run_anneal(dw, schedule, 200, 777, options);
    CHECK(trial_record_to_json(a) == trial_record_to_json(b));
    const TrialRecord c = run_anneal(dw, schedule, 200, 778, options);
    CHECK(trial_record_to_json(a) != trial_record_to_json(c));
}

TEST_CASE("snapshot histograms account for every walker") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(30));
    const Schedule schedule = linear_schedule(400, default_dt(dw));
    AnnealOptions options;
    options.snapshot_stride = 100;
    const TrialRecord record = run_anneal(dw, schedule, 300, 5, options);
    REQUIRE(!record.snapshots.empty());
    for (const PopulationSnapshot& snap : record.snapshots) {
        CHECK(std::accumulate(snap.histogram.begin(), snap.histogram.end(), 0L) ==
              snap.size);
    }
}

TEST_CASE("population control keeps the size near target at fixed s") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(30));
    const double dt = default_dt(dw);
    WalkerPopulation pop = initialize_population(dw, 1000, dt, 99, 0.5);
    pop.threshold = update_threshold(pop, dw, 0.5);
    long in_band = 0;
    const int steps = 3000;
    for (int t = 0; t < steps; ++t) {
        pop = step_population(std::move(pop), 0.5, dw);
        pop.threshold = update_threshold(pop, dw, 0.5);
        if (pop.size() >= 500 && pop.size() <= 2000) ++in_band;
    }
    CHECK(static_cast<double>(in_band) / steps >= 0.99);
}

TEST_CASE("fixed-s run tracks the exact ground-state weight marginal (small)") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(16));
    const SymmetricTridiagonal m = build_tridiagonal(dw, 0.5);
    const HammingDistribution target = classical_distribution(ground_state_vector(m));

    AnnealOptions options;
    options.snapshot_stride = 10;
    const TrialRecord record =
        run_fixed(dw, 0.5, 4000, default_dt(dw), 4000, 31, options);
    REQUIRE(!record.extinct);
    std::vector<long> aggregate(17, 0);
    for (const PopulationSnapshot& snap : record.snapshots) {
        if (snap.step < 2000) continue;  // burn-in
        for (int w = 0; w <= 16; ++w) aggregate[w] += snap.histogram[w];
    }
    CHECK(tv_distance(aggregate, target) < 0.1);
}

TEST_CASE("bit-string walkers lump to the symmetric weight walk") {
    const ProblemInstance dw = ProblemInstance::double_well(default_double_well(12));
    const double dt = default_dt(dw);
    const int walkers = 2000;
    const int steps = 600;

    BitstringPopulation bits = initialize_bitstring_population(dw, walkers, dt, 101, 0.5);
    bits.threshold = update_bitstring_threshold(bits, dw, 0.5);
    WalkerPopulation weights = initialize_population(dw, walkers, dt, 202, 0.5);
    weights.threshold = update_threshold(weights, dw, 0.5);

    std::vector<long> hist_bits(13, 0), hist_weights(13, 0);
    for (int t = 0; t < steps; ++t) {
        bits = step_bitstring_population(std::move(bits), 0.5, dw);
        bits.threshold = update_bitstring_threshold(bits, dw, 0.5);
        weights = step_population(std::move(weights), 0.5, dw);
        weights.threshold = update_threshold(weights, dw, 0.5);
        if (t >= steps / 2) {
            const auto hb = bitstring_weight_histogram(bits);
            for (std::size_t w = 0; w < hb.size() && w < 13; ++w) hist_bits[w] += hb[w];
            for (int w : weights.weights) ++hist_weights[w];
        }
    }
    // Same stochastic law, independent streams: weight marginals agree.
    double total_b = std::accumulate(hist_bits.begin(), hist_bits.end(), 0L);
    double total_w = std::accumulate(hist_weights.begin(), hist_weights.end(), 0L);
    double tv = 0.0;
    for (int w = 0; w <= 12; ++w) {
        tv += std::abs(hist_bits[w] / total_b - hist_weights[w] / total_w);
    }
    CHECK(0.5 * tv < 0.05);
}

TEST_CASE("bitstring weight counts ones") {
    BitstringWalker w;
    w.n = 70;
    w.bits = {0xFFULL, 0x3ULL};
    CHECK(w.weight() == 10);
}

TEST_CASE("spawn expectation beyond one clone grows the population") {
    const ProblemInstance ff = ProblemInstance::free_field(8);
    WalkerPopulation pop;
    pop.weights.assign(100, 4);
    pop.threshold = 30.0;  // offset -30: spawn expectation 3 per walker
    pop.dt = 0.1;
    pop.target_size = 100;
    pop.rng.seed(1);
    pop = step_population(std::move(pop), 0.0, ff);
    CHECK(pop.size() >= 350);  // 100 survivors + ~300 clones
    CHECK(pop.size() <= 520);
}

TEST_CASE("default dt satisfies both rate bounds on its window") {
    for (const ProblemInstance& inst :
         {ProblemInstance::double_well(default_double_well(100)),
          ProblemInstance::spike(SpikeParams(64, 0.4)),
          ProblemInstance::free_field(10)}) {
        const double dt = default_dt(inst);
        CHECK(dt > 0.0);
        const auto [lo, hi] = inst.rate_scan_window();
        for (double s : {0.0, 0.5, 1.0}) {
            CHECK(dt * inst.hopping_scale(s) * inst.n() <= 0.5 + 1e-12);
            double vmin = 1e300, vmax = -1e300;
            for (int w = lo; w <= hi; ++w) {
                vmin = std::min(vmin, inst.potential(w, s));
                vmax = std::max(vmax, inst.potential(w, s));
            }
            CHECK(dt * (vmax - vmin) <= 0.5 + 1e-12);
        }
    }
}

TEST_CASE("adaptive dt keeps spike hops alive through the late anneal") {
    const ProblemInstance sp = ProblemInstance::spike(SpikeParams(64, 0.4));
    const Schedule schedule = linear_schedule(1500, default_dt(sp));
    AnnealOptions options;
    options.adaptive_dt = true;
    const TrialRecord adaptive = run_anneal(sp, schedule, 800, 9, options);
    REQUIRE(!adaptive.extinct);
    // The adaptive run reaches the global minimum at this easy size.
    CHECK(adaptive.success);
}
