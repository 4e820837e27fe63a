#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stoq {

/// Annealing parameter s in [0, 1]. Constructing an out-of-range or
/// non-finite value throws std::invalid_argument.
struct AnnealPoint {
    double s = 0.0;
    AnnealPoint(double value);  // NOLINT: implicit by design, validated
};

/// Parameters of the quartic double-well counterexample.
///
/// The left well sits at Hamming weight n/2, the right well at n/2 + delta*n.
/// Default scaling laws (see default_double_well): omega = 260 sqrt(n),
/// delta = 0.1 (100/n)^{1/4}, tau = 1000 / n^{5/4}, which make
/// delta^2 * omega = 26 independently of n.
struct DoubleWellParams {
    int n = 0;
    double omega = 0.0;
    double delta = 0.0;
    double tau = 0.0;

    DoubleWellParams(int n, double omega, double delta, double tau);

    double left_center() const { return n / 2.0; }
    double right_center() const { return n / 2.0 + delta * n; }
    /// Nearest lattice site to the left well center.
    int left_well_site() const;
    /// Nearest lattice site to the right well center, round(n/2 + delta*n).
    /// Used for success detection and well-site comparisons; potentials are
    /// always evaluated at the exact real-valued center.
    int right_well_site() const;
};

/// Default parameter set for a given qubit count. Requires n >= 4 so the
/// wells do not collide with the lattice boundary.
DoubleWellParams default_double_well(int n);

/// Parameters of the spike-barrier benchmark: a linear ramp with minimum at
/// Hamming weight zero plus a rectangular barrier of height and width
/// n^alpha centered at weight n/4.
struct SpikeParams {
    int n = 0;
    double alpha = 0.4;

    SpikeParams(int n, double alpha = 0.4);

    double barrier_height() const;
    double barrier_center() const { return n / 4.0; }
    /// True when alpha lies in the paper's regime (0, 1); alpha = 0 is
    /// accepted but degenerates to a height-1 barrier.
    bool in_paper_regime() const { return alpha > 0.0 && alpha < 1.0; }
};

/// Annealing schedule: step index t in {0..total_steps} mapped to s(t),
/// with a fixed walker timestep dt.
struct Schedule {
    long total_steps = 0;
    double dt = 0.0;

    double s_at(long t) const;
};

/// Linear schedule s(t) = t / total_steps. Rejects nonpositive inputs.
Schedule linear_schedule(long total_steps, double dt);

/// A Hamming-weight-symmetric problem instance: a potential V(w, s) over
/// integer weights w in [0, n] together with the transverse-field hopping
/// scale. Immutable value object; safe to share across threads.
class ProblemInstance {
  public:
    enum class Kind { double_well, spike, free_field };

    static ProblemInstance double_well(DoubleWellParams params);
    static ProblemInstance spike(SpikeParams params);
    /// Zero potential with 1/n hopping; useful as a degenerate reference.
    static ProblemInstance free_field(int n);

    int n() const { return n_; }
    Kind kind() const { return kind_; }
    std::string name() const;

    /// V(w, s); finite for all w in [0, n], s in [0, 1]. Out-of-range w throws.
    double potential(int w, AnnealPoint s) const;

    /// Fills table[w] = V(w, s) for w in [0, n] (table resized to n + 1).
    /// Same values as potential(); per-kind constants are hoisted out of the
    /// loop, so this is the path for per-step tables.
    void fill_potential_table(AnnealPoint s, std::vector<double>& table) const;

    /// Per-neighbor hopping amplitude: 1/n for the double well (s enters only
    /// through the linear tilt), (1-s)/2 for the spike interpolation
    /// H(s) = (1-s) sum_j (1-X_j)/2 + s V_spike.
    double hopping_scale(AnnealPoint s) const;

    /// All lattice sites achieving the global minimum of V(., s = 1).
    std::vector<int> final_minimizers() const;

    /// Success set for walker runs: the rounded right-well site for the
    /// double well (delta*n rounds to the nearest lattice site, used
    /// consistently for success detection), weight zero for the spike, and
    /// the full minimizer set otherwise. For fractional delta*n this can sit
    /// one site off the grid argmin of V(., 1).
    std::vector<int> success_sites() const;

    /// Weight window that the walker population typically occupies; used to
    /// scan the potential range when choosing a default timestep.
    std::pair<int, int> rate_scan_window() const;

    const DoubleWellParams* double_well_params() const {
        return dw_ ? &*dw_ : nullptr;
    }
    const SpikeParams* spike_params() const { return spike_ ? &*spike_ : nullptr; }

  private:
    ProblemInstance(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_;
    int n_;
    std::optional<DoubleWellParams> dw_;
    std::optional<SpikeParams> spike_;
};

}  // namespace stoq
