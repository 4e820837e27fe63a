#include "stoqbench/ssmc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace stoq {

namespace {

struct BranchSetup {
    double dt_hop = 0.0;  // dt * hopping_scale
    double dt = 0.0;
    double threshold = 0.0;
    int n = 0;
    ClampPolicy policy = ClampPolicy::strict;
};

// Single source of truth for the step probabilities; the walker sweep feeds
// it table values, substochastic_probabilities feeds it a direct lookup.
StepProbabilities branch_probabilities(double v, int w, const BranchSetup& setup) {
    if (!std::isfinite(v) || !std::isfinite(setup.threshold)) {
        throw std::runtime_error("substochastic step saw a non-finite energy");
    }
    StepProbabilities p;
    p.up = setup.dt_hop * (setup.n - w);
    p.down = setup.dt_hop * w;
    const double hop_mass = p.up + p.down;
    if (hop_mass > 1.0) {
        throw std::runtime_error(
            "substochasticity violated: p_up + p_down = " + std::to_string(hop_mass) +
            " exceeds 1 (dt too large)");
    }
    const double offset = v - setup.threshold;
    const double death_raw = setup.dt * std::max(offset, 0.0);
    const double avail = 1.0 - hop_mass;
    if (death_raw > avail) {
        if (setup.policy == ClampPolicy::strict) {
            throw std::runtime_error("substochasticity violated: p_death = " +
                                     std::to_string(death_raw) +
                                     " exceeds available row mass " +
                                     std::to_string(avail));
        }
        p.death = avail;
    } else {
        p.death = death_raw;
    }
    p.spawn = setup.dt * std::max(-offset, 0.0);
    if (setup.policy == ClampPolicy::strict && p.spawn > 1.0) {
        throw std::runtime_error("substochasticity violated: p_spawn = " +
                                 std::to_string(p.spawn) + " exceeds 1");
    }
    p.stay = 1.0 - hop_mass - p.death;
    return p;
}

std::vector<double> potential_table(const ProblemInstance& instance, AnnealPoint s) {
    std::vector<double> table;
    instance.fill_potential_table(s, table);
    return table;
}

double mean_energy(const std::vector<double>& table, const std::vector<int>& weights) {
    double sum = 0.0;
    for (int w : weights) sum += table[w];
    return sum / static_cast<double>(weights.size());
}

double threshold_from(const std::vector<double>& table, const std::vector<int>& weights,
                      int target_size, double dt, double feedback_gain) {
    const double mean = mean_energy(table, weights);
    const double ratio =
        static_cast<double>(target_size) / static_cast<double>(weights.size());
    return mean + (feedback_gain / dt) * std::log(ratio);
}

std::vector<long> weight_histogram(const std::vector<int>& weights, int n) {
    std::vector<long> hist(static_cast<std::size_t>(n) + 1, 0);
    for (int w : weights) ++hist[w];
    return hist;
}

}  // namespace

StepProbabilities substochastic_probabilities(int w, AnnealPoint s,
                                              const ProblemInstance& instance,
                                              double threshold, double dt,
                                              ClampPolicy policy) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("substochastic step requires dt > 0");
    }
    BranchSetup setup{dt * instance.hopping_scale(s), dt, threshold, instance.n(),
                      policy};
    return branch_probabilities(instance.potential(w, s), w, setup);
}

WalkerPopulation initialize_population(const ProblemInstance& instance, int walkers,
                                       double dt, std::uint64_t seed, AnnealPoint s) {
    if (walkers < 1) {
        throw std::invalid_argument("population requires at least one walker");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("population requires dt > 0");
    }
    WalkerPopulation pop;
    pop.dt = dt;
    pop.target_size = walkers;
    pop.rng.seed(seed);
    pop.weights.resize(walkers);
    for (int i = 0; i < walkers; ++i) {
        pop.weights[i] = binomial_half(pop.rng, instance.n());
    }
    const std::vector<double> table = potential_table(instance, s);
    pop.threshold = mean_energy(table, pop.weights);
    return pop;
}

WalkerPopulation step_population(WalkerPopulation pop, AnnealPoint s,
                                 const ProblemInstance& instance) {
    if (pop.weights.empty()) {
        throw std::invalid_argument("cannot step an empty population");
    }
    const std::vector<double> table = potential_table(instance, s);
    BranchSetup setup{pop.dt * instance.hopping_scale(s), pop.dt, pop.threshold,
                      instance.n(), ClampPolicy::saturate};

    std::vector<int> next;
    next.reserve(pop.weights.size() + pop.weights.size() / 8 + 4);
    for (const int w : pop.weights) {
        const StepProbabilities p = branch_probabilities(table[w], w, setup);
        if (p.spawn > 0.0) {
            long clones = static_cast<long>(p.spawn);
            const double frac = p.spawn - static_cast<double>(clones);
            if (frac > 0.0 && uniform_double(pop.rng) < frac) ++clones;
            for (long c = 0; c < clones; ++c) next.push_back(w);
        }
        const double u = uniform_double(pop.rng);
        if (u < p.death) {
            continue;  // walker removed
        }
        if (u < p.death + p.up) {
            next.push_back(w + 1);
        } else if (u < p.death + p.up + p.down) {
            next.push_back(w - 1);
        } else {
            next.push_back(w);
        }
    }
    if (next.empty()) {
        throw ExtinctionError();
    }
    pop.weights = std::move(next);
    return pop;
}

double update_threshold(const WalkerPopulation& pop, const ProblemInstance& instance,
                        AnnealPoint s, double feedback_gain) {
    if (pop.weights.empty()) {
        throw std::invalid_argument("cannot update threshold of an empty population");
    }
    const std::vector<double> table = potential_table(instance, s);
    return threshold_from(table, pop.weights, pop.target_size, pop.dt, feedback_gain);
}

namespace {

PopulationSnapshot make_snapshot(const WalkerPopulation& pop, long step, double s,
                                 int n) {
    PopulationSnapshot snap;
    snap.step = step;
    snap.s = s;
    snap.histogram = weight_histogram(pop.weights, n);
    snap.size = pop.size();
    snap.threshold = pop.threshold;
    return snap;
}

// dt bound from the current population extent: hop row mass <= 1/2 and
// dt * (potential range over the occupied window + margin) <= 1/2.
double adaptive_dt_from_table(const ProblemInstance& instance, AnnealPoint s,
                              const std::vector<double>& table, int wmin, int wmax,
                              int margin) {
    const int lo = std::max(0, wmin - margin);
    const int hi = std::min(instance.n(), wmax + margin);
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (int w = lo; w <= hi; ++w) {
        vmin = std::min(vmin, table[w]);
        vmax = std::max(vmax, table[w]);
    }
    const double hop_mass = instance.hopping_scale(s) * instance.n();
    const double rate = std::max({hop_mass, vmax - vmin, 1e-12});
    return 0.5 / rate;
}

// The annealing loop keeps the potential table one step ahead: step t hops
// against table(s_t) while accumulating the post-step mean energy against
// table(s_{t+1}), so each sweep costs one table build and one walker pass.
TrialRecord run_loop(const ProblemInstance& instance, int walkers, std::uint64_t seed,
                     long total_steps, double dt, const AnnealOptions& options,
                     bool fixed, double fixed_s) {
    TrialRecord record;
    record.n = instance.n();
    record.problem = instance.name();
    record.walkers = walkers;
    record.timesteps = total_steps;
    record.seed = seed;

    const auto s_of = [&](long t) {
        return fixed ? fixed_s
                     : static_cast<double>(t) / static_cast<double>(total_steps);
    };

    WalkerPopulation pop =
        initialize_population(instance, walkers, dt, seed, AnnealPoint(s_of(0)));

    std::vector<double> table;       // V(., s_t)
    std::vector<double> table_next;  // V(., s_{t+1})
    std::vector<int> next;
    instance.fill_potential_table(AnnealPoint(s_of(1)), table);

    int wmin = instance.n();
    int wmax = 0;
    for (int w : pop.weights) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    if (options.adaptive_dt) {
        pop.dt = adaptive_dt_from_table(instance, AnnealPoint(s_of(1)), table, wmin,
                                        wmax, options.adaptive_margin);
    }
    record.dt = pop.dt;
    if (options.snapshot_stride > 0) {
        record.snapshots.push_back(make_snapshot(pop, 0, s_of(0), instance.n()));
    }

    for (long t = 1; t <= total_steps; ++t) {
        const double s = s_of(t);
        const double s_next = fixed ? fixed_s : s_of(std::min(t + 1, total_steps));
        instance.fill_potential_table(AnnealPoint(s_next), table_next);

        BranchSetup setup{pop.dt * instance.hopping_scale(s), pop.dt, pop.threshold,
                          instance.n(), ClampPolicy::saturate};
        next.clear();
        next.reserve(pop.weights.size() + pop.weights.size() / 8 + 4);
        double energy_next = 0.0;
        int new_wmin = instance.n();
        int new_wmax = 0;
        const auto emit = [&](int w) {
            next.push_back(w);
            energy_next += table_next[w];
            new_wmin = std::min(new_wmin, w);
            new_wmax = std::max(new_wmax, w);
        };
        for (const int w : pop.weights) {
            const StepProbabilities p = branch_probabilities(table[w], w, setup);
            if (p.spawn > 0.0) {
                long clones = static_cast<long>(p.spawn);
                const double frac = p.spawn - static_cast<double>(clones);
                if (frac > 0.0 && uniform_double(pop.rng) < frac) ++clones;
                for (long c = 0; c < clones; ++c) emit(w);
            }
            const double u = uniform_double(pop.rng);
            if (u < p.death) continue;
            if (u < p.death + p.up) {
                emit(w + 1);
            } else if (u < p.death + p.up + p.down) {
                emit(w - 1);
            } else {
                emit(w);
            }
        }
        if (next.empty()) {
            record.extinct = true;
            record.extinct_step = t;
            record.final_histogram.assign(static_cast<std::size_t>(instance.n()) + 1, 0);
            return record;
        }
        pop.weights.swap(next);
        wmin = new_wmin;
        wmax = new_wmax;

        const double mean = energy_next / static_cast<double>(pop.weights.size());
        const double ratio = static_cast<double>(pop.target_size) /
                             static_cast<double>(pop.weights.size());
        pop.threshold = mean + (options.feedback_gain / pop.dt) * std::log(ratio);
        table.swap(table_next);
        if (options.adaptive_dt) {
            pop.dt = adaptive_dt_from_table(instance, AnnealPoint(s_next), table, wmin,
                                            wmax, options.adaptive_margin);
        }
        if (options.snapshot_stride > 0 && t % options.snapshot_stride == 0) {
            record.snapshots.push_back(make_snapshot(pop, t, s, instance.n()));
        }
    }

    record.final_histogram = weight_histogram(pop.weights, instance.n());
    for (int site : instance.success_sites()) {
        if (record.final_histogram[site] > 0) {
            record.success = true;
            break;
        }
    }
    return record;
}

}  // namespace

TrialRecord run_anneal(const ProblemInstance& instance, const Schedule& schedule,
                       int walkers, std::uint64_t seed, const AnnealOptions& options) {
    if (walkers < 1) {
        throw std::invalid_argument("run_anneal requires walkers >= 1");
    }
    return run_loop(instance, walkers, seed, schedule.total_steps, schedule.dt, options,
                    /*fixed=*/false, 0.0);
}

TrialRecord run_fixed(const ProblemInstance& instance, AnnealPoint s, long steps,
                      double dt, int walkers, std::uint64_t seed,
                      const AnnealOptions& options) {
    if (walkers < 1 || steps < 1) {
        throw std::invalid_argument("run_fixed requires walkers >= 1 and steps >= 1");
    }
    return run_loop(instance, walkers, seed, steps, dt, options, /*fixed=*/true, s.s);
}

double default_dt(const ProblemInstance& instance) {
    const auto [lo, hi] = instance.rate_scan_window();
    double dt = std::numeric_limits<double>::infinity();
    const int s_points = 21;
    for (int i = 0; i < s_points; ++i) {
        const AnnealPoint s(static_cast<double>(i) / (s_points - 1));
        const double hop_mass = instance.hopping_scale(s) * instance.n();
        if (hop_mass > 0.0) {
            dt = std::min(dt, 0.5 / hop_mass);
        }
        double vmin = std::numeric_limits<double>::infinity();
        double vmax = -vmin;
        for (int w = lo; w <= hi; ++w) {
            const double v = instance.potential(w, s);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        if (vmax > vmin) {
            dt = std::min(dt, 0.5 / (vmax - vmin));
        }
    }
    if (!std::isfinite(dt)) {
        throw std::runtime_error("default_dt: degenerate instance");
    }
    return dt;
}

double tv_distance(const std::vector<long>& histogram, const HammingDistribution& dist) {
    if (histogram.size() != dist.weights.size()) {
        throw std::invalid_argument("tv_distance: mismatched lattice sizes");
    }
    long total = 0;
    for (long c : histogram) total += c;
    if (total <= 0) {
        throw std::invalid_argument("tv_distance: empty histogram");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        acc += std::abs(static_cast<double>(histogram[i]) / total - dist.weights[i]);
    }
    return 0.5 * acc;
}

double tv_distance(const PopulationSnapshot& snapshot, const HammingDistribution& dist) {
    return tv_distance(snapshot.histogram, dist);
}

// ---------------------------------------------------------------------------
// Bit-string mode.

int BitstringWalker::weight() const {
    int count = 0;
    for (std::uint64_t word : bits) count += std::popcount(word);
    return count;
}

namespace {

BitstringWalker random_bitstring(Rng& rng, int n) {
    BitstringWalker walker;
    walker.n = n;
    walker.bits.assign((n + 63) / 64, 0);
    for (std::size_t i = 0; i < walker.bits.size(); ++i) {
        walker.bits[i] = rng();
    }
    const int tail = n % 64;
    if (tail != 0) {
        walker.bits.back() &= (std::uint64_t{1} << tail) - 1;
    }
    return walker;
}

void flip_bit(BitstringWalker& walker, int index) {
    walker.bits[index / 64] ^= std::uint64_t{1} << (index % 64);
}

}  // namespace

BitstringPopulation initialize_bitstring_population(const ProblemInstance& instance,
                                                    int walkers, double dt,
                                                    std::uint64_t seed, AnnealPoint s) {
    if (walkers < 1) {
        throw std::invalid_argument("population requires at least one walker");
    }
    BitstringPopulation pop;
    pop.dt = dt;
    pop.target_size = walkers;
    pop.rng.seed(seed);
    pop.walkers.reserve(walkers);
    for (int i = 0; i < walkers; ++i) {
        pop.walkers.push_back(random_bitstring(pop.rng, instance.n()));
    }
    const std::vector<double> table = potential_table(instance, s);
    double sum = 0.0;
    for (const auto& walker : pop.walkers) sum += table[walker.weight()];
    pop.threshold = sum / walkers;
    return pop;
}

BitstringPopulation step_bitstring_population(BitstringPopulation pop, AnnealPoint s,
                                              const ProblemInstance& instance) {
    if (pop.walkers.empty()) {
        throw std::invalid_argument("cannot step an empty population");
    }
    const int n = instance.n();
    const std::vector<double> table = potential_table(instance, s);
    // Per-neighbor hop probability dt * hopping_scale; the aggregated up/down
    // split emerges from the uniformly chosen bit.
    const double hop_total = pop.dt * instance.hopping_scale(s) * n;
    BranchSetup setup{pop.dt * instance.hopping_scale(s), pop.dt, pop.threshold, n,
                      ClampPolicy::saturate};

    std::vector<BitstringWalker> next;
    next.reserve(pop.walkers.size() + pop.walkers.size() / 8 + 4);
    for (const auto& walker : pop.walkers) {
        const int w = walker.weight();
        const StepProbabilities p = branch_probabilities(table[w], w, setup);
        if (p.spawn > 0.0) {
            long clones = static_cast<long>(p.spawn);
            const double frac = p.spawn - static_cast<double>(clones);
            if (frac > 0.0 && uniform_double(pop.rng) < frac) ++clones;
            for (long c = 0; c < clones; ++c) next.push_back(walker);
        }
        const double u = uniform_double(pop.rng);
        if (u < p.death) {
            continue;
        }
        if (u < p.death + hop_total) {
            BitstringWalker moved = walker;
            const double v = uniform_double(pop.rng);
            const int bit = std::min(n - 1, static_cast<int>(v * n));
            flip_bit(moved, bit);
            next.push_back(std::move(moved));
        } else {
            next.push_back(walker);
        }
    }
    if (next.empty()) {
        throw ExtinctionError();
    }
    pop.walkers = std::move(next);
    return pop;
}

double update_bitstring_threshold(const BitstringPopulation& pop,
                                  const ProblemInstance& instance, AnnealPoint s,
                                  double feedback_gain) {
    if (pop.walkers.empty()) {
        throw std::invalid_argument("cannot update threshold of an empty population");
    }
    const std::vector<double> table = potential_table(instance, s);
    double sum = 0.0;
    for (const auto& walker : pop.walkers) sum += table[walker.weight()];
    const double mean = sum / static_cast<double>(pop.walkers.size());
    const double ratio =
        static_cast<double>(pop.target_size) / static_cast<double>(pop.walkers.size());
    return mean + (feedback_gain / pop.dt) * std::log(ratio);
}

std::vector<long> bitstring_weight_histogram(const BitstringPopulation& pop) {
    int n = 0;
    for (const auto& walker : pop.walkers) n = std::max(n, walker.n);
    std::vector<long> hist(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& walker : pop.walkers) ++hist[walker.weight()];
    return hist;
}

}  // namespace stoq
