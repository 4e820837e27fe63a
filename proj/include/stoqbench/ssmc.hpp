#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stoqbench/analytics.hpp"
#include "stoqbench/model.hpp"
#include "stoqbench/rng.hpp"

namespace stoq {

/// Per-walker single-step probabilities derived from the substochastic
/// matrix I - (H - E_T) dt. The non-spawn branches {up, down, death, stay}
/// form a simplex summing to exactly 1; spawn is an independent event whose
/// expectation is dt * max(E_T - V, 0) (clone count floor(p) + Bernoulli on
/// the fraction when p > 1).
struct StepProbabilities {
    double up = 0.0;
    double down = 0.0;
    double death = 0.0;
    double spawn = 0.0;
    double stay = 0.0;
};

/// How out-of-range probabilities are treated. `strict` throws (naming the
/// offending probability); `saturate` caps the death branch at the available
/// row mass, so a walker deep in the classically forbidden region dies within
/// one step. Hop probabilities violating the bound always throw: that means
/// dt itself is too large.
enum class ClampPolicy { strict, saturate };

StepProbabilities substochastic_probabilities(int w, AnnealPoint s,
                                              const ProblemInstance& instance,
                                              double threshold, double dt,
                                              ClampPolicy policy = ClampPolicy::strict);

/// Walker multiset over Hamming weights plus the adaptive energy threshold.
/// The RNG stream lives in the population and is consumed in walker-index
/// order, so trajectories are reproducible from the seed alone.
struct WalkerPopulation {
    std::vector<int> weights;
    double threshold = 0.0;
    double dt = 0.0;
    int target_size = 0;
    Rng rng;

    long size() const { return static_cast<long>(weights.size()); }
};

/// Raised when every walker dies in one step; run_anneal converts it into a
/// failed TrialRecord rather than crashing.
class ExtinctionError : public std::runtime_error {
  public:
    ExtinctionError() : std::runtime_error("walker population went extinct") {}
};

/// Fresh population of `walkers` uniform random bit strings (binomial over
/// weights), threshold initialized to the population mean energy at s.
WalkerPopulation initialize_population(const ProblemInstance& instance, int walkers,
                                       double dt, std::uint64_t seed,
                                       AnnealPoint s = 0.0);

/// One sweep: every walker independently spawns (clone at its current
/// position) and then dies / hops up / hops down / stays per the
/// substochastic probabilities. Throws ExtinctionError if nobody survives.
/// The threshold is NOT updated here; call update_threshold next.
WalkerPopulation step_population(WalkerPopulation pop, AnnealPoint s,
                                 const ProblemInstance& instance);

/// Adaptive threshold: population mean energy at s plus the logarithmic size
/// feedback (eta / dt) ln(target / current).
double update_threshold(const WalkerPopulation& pop, const ProblemInstance& instance,
                        AnnealPoint s, double feedback_gain = 0.1);

struct PopulationSnapshot {
    long step = 0;
    double s = 0.0;
    std::vector<long> histogram;  // counts per Hamming weight, sums to size
    long size = 0;
    double threshold = 0.0;
};

struct TrialRecord {
    int n = 0;
    std::string problem;
    int walkers = 0;  // initial / target population
    long timesteps = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    bool success = false;
    bool extinct = false;
    long extinct_step = -1;
    std::vector<long> final_histogram;
    std::vector<PopulationSnapshot> snapshots;
};

struct AnnealOptions {
    long snapshot_stride = 0;    // 0: no intermediate snapshots
    double feedback_gain = 0.1;  // eta
    /// Re-derive dt every step from the current hop mass and the potential
    /// range over the occupied weight window (plus a margin), instead of
    /// holding the schedule's dt. Keeps the walk moving on interpolations
    /// whose hopping vanishes at s = 1 (the spike).
    bool adaptive_dt = false;
    int adaptive_margin = 8;
};

/// Full annealing run through the schedule. Success: any walker occupies a
/// global minimizer of V(., s = 1) at the final step. Extinction is recorded
/// as a failed trial. Identical inputs give bit-identical records.
TrialRecord run_anneal(const ProblemInstance& instance, const Schedule& schedule,
                       int walkers, std::uint64_t seed,
                       const AnnealOptions& options = {});

/// Fixed-s run used for quasistationarity studies: `steps` sweeps at constant
/// s with the adaptive threshold, snapshotting every snapshot_stride steps.
TrialRecord run_fixed(const ProblemInstance& instance, AnnealPoint s, long steps,
                      double dt, int walkers, std::uint64_t seed,
                      const AnnealOptions& options = {});

/// Largest dt such that, over a coarse s-grid, the hop row mass stays <= 1/2
/// and dt * (potential range over the instance's typical weight window)
/// stays <= 1/2.
double default_dt(const ProblemInstance& instance);

/// Total-variation distance between an empirical snapshot and a reference
/// distribution over the same weight lattice.
double tv_distance(const PopulationSnapshot& snapshot, const HammingDistribution& dist);
double tv_distance(const std::vector<long>& histogram, const HammingDistribution& dist);

// ---------------------------------------------------------------------------
// Generic bit-string mode. The symmetric weight walk above is the exact
// lumping of this process; the bit-string walker is kept for non-symmetric
// potentials and for cross-validation at small n.

struct BitstringWalker {
    std::vector<std::uint64_t> bits;
    int n = 0;

    int weight() const;
};

struct BitstringPopulation {
    std::vector<BitstringWalker> walkers;
    double threshold = 0.0;
    double dt = 0.0;
    int target_size = 0;
    Rng rng;
};

BitstringPopulation initialize_bitstring_population(const ProblemInstance& instance,
                                                    int walkers, double dt,
                                                    std::uint64_t seed,
                                                    AnnealPoint s = 0.0);

/// Same step semantics as step_population; a hop flips one uniformly chosen
/// bit, which reproduces the (n-w)/n vs w/n weight-marginal split.
BitstringPopulation step_bitstring_population(BitstringPopulation pop, AnnealPoint s,
                                              const ProblemInstance& instance);

double update_bitstring_threshold(const BitstringPopulation& pop,
                                  const ProblemInstance& instance, AnnealPoint s,
                                  double feedback_gain = 0.1);

std::vector<long> bitstring_weight_histogram(const BitstringPopulation& pop);

}  // namespace stoq
