#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stoqbench/model.hpp"

namespace stoq {

/// Spectral gap gamma(s) = E1 - E0 of the symmetric-subspace Hamiltonian.
double gap_at(const ProblemInstance& instance, AnnealPoint s);

struct GapSample {
    double s;
    double gamma;
};

/// Result of a minimum-gap scan: all evaluated (s, gamma) samples in s order,
/// the minimum gap, its location, and the adiabatic cost 1/gamma_min^2.
struct GapCurve {
    std::vector<GapSample> samples;
    double gamma_min = 0.0;
    double s_star = 0.0;
    double cost = 0.0;
    /// Set when the coarse minimum sat on a boundary of [0, 1] and the
    /// refinement could only proceed one-sidedly.
    bool boundary_refined = false;
};

/// Coarse uniform scan over s followed by golden-section refinement around
/// the coarse minimum to |delta s| < 1e-6. Requires coarse_points >= 3.
GapCurve min_gap_scan(const ProblemInstance& instance, int coarse_points = 201,
                      int threads = 1);

struct QuantumCostPoint {
    int n = 0;
    double s_star = 0.0;
    double gamma_min = 0.0;
    double cost = 0.0;
};

struct QuantumCostSeries {
    std::vector<QuantumCostPoint> points;
    /// Per-n failures (n, message); the series continues past them.
    std::vector<std::pair<int, std::string>> failures;
    /// Log-log least-squares slope of cost vs n; NaN with fewer than 2 points.
    double loglog_slope = 0.0;
};

/// Gap scans over a ladder of sizes using an instance factory (defaults per
/// n for the double well, or spike instances for the barrier benchmark).
QuantumCostSeries quantum_cost_series(
    const std::vector<int>& n_list,
    const std::function<ProblemInstance(int)>& instance_for, int coarse_points = 201,
    int threads = 1);

/// Default-parameter double-well ladder.
QuantumCostSeries quantum_cost_series(const std::vector<int>& n_list,
                                      int coarse_points = 201, int threads = 1);

}  // namespace stoq
