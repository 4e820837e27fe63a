#pragma once

#include <vector>

#include "stoqbench/model.hpp"

namespace stoq {

/// Tight-binding estimate of the minimum gap,
/// gamma_TB = exp(-delta^2 omega / 4) (delta^2 omega - 3) / (8 delta^2 n^2).
/// The closed form goes nonpositive for delta^2 omega <= 3; that value is
/// returned with in_regime = false rather than failing.
struct TightBindingGap {
    double value = 0.0;
    bool in_regime = true;
};

TightBindingGap tight_binding_gap(const DoubleWellParams& params);

/// Gaussian per-well model behind the tight-binding gap: both wells share
/// the harmonic width sigma^2 = n^2 / omega obtained by expanding the
/// quartic to second order about its minima.
struct TightBindingModel {
    double center_left = 0.0;
    double center_right = 0.0;
    double sigma_sq = 0.0;
    double gamma_tb = 0.0;
    bool in_regime = true;
};

TightBindingModel tight_binding_model(const DoubleWellParams& params);

enum class Well { left, right };

/// Discrete Gaussian well state phi(w) ~ exp(-(w - w_c)^2 / (2 sigma^2)),
/// normalized to unit 2-norm over the lattice w in [0, n].
std::vector<double> gaussian_well(const DoubleWellParams& params, Well which);

/// Classical probability distribution over Hamming weights.
struct HammingDistribution {
    std::vector<double> weights;  // size n + 1, nonnegative, sums to 1

    int n() const { return static_cast<int>(weights.size()) - 1; }
};

/// D(w) ~ sqrt(binomial(n, w)) phi(w), normalized; log-domain binomials so
/// large n cannot overflow. Throws if every term underflows to zero.
HammingDistribution classical_distribution(const std::vector<double>& phi);

/// ln binomial(n, w) via lgamma.
double log_binomial(int n, int w);

/// Right-well mass of D built on the left-well Gaussian:
/// P_R = sum_{w >= round(n/2 + delta n)} D(w), accumulated in the log domain.
double right_well_mass_exact(const DoubleWellParams& params);

/// Closed form P_R ~ (1 / 2 sqrt(pi)) exp[-delta^2 (n + omega / 2)].
double right_well_mass_approx(const DoubleWellParams& params);

/// Central finite-difference discretization of the 1D continuum Hamiltonian
/// -1/2 d^2/dw^2 + V_q + V_l on [n/2 - 5 sigma, n/2 + delta n + 5 sigma]
/// with hard walls. Used to validate that the V_fict cancellation reproduces
/// the lattice gap at large n. Errors if the grid resolves sigma with fewer
/// than 10 points.
double continuum_gap(const DoubleWellParams& params, int grid_points,
                     AnnealPoint s = 0.5);

struct ContinuumGroundState {
    std::vector<double> grid;  // w coordinates
    std::vector<double> psi;   // unit 2-norm ground state on the grid
};

ContinuumGroundState continuum_ground_state(const DoubleWellParams& params,
                                            int grid_points, AnnealPoint s);

}  // namespace stoq
