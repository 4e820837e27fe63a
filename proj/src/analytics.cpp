#include "stoqbench/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stoqbench/potentials.hpp"
#include "stoqbench/tridiagonal.hpp"

namespace stoq {

TightBindingGap tight_binding_gap(const DoubleWellParams& p) {
    const double d2w = p.delta * p.delta * p.omega;
    const double n2 = static_cast<double>(p.n) * p.n;
    const double value =
        std::exp(-d2w / 4.0) * (d2w - 3.0) / (8.0 * p.delta * p.delta * n2);
    return {value, d2w > 3.0};
}

TightBindingModel tight_binding_model(const DoubleWellParams& p) {
    TightBindingModel model;
    model.center_left = p.left_center();
    model.center_right = p.right_center();
    model.sigma_sq = static_cast<double>(p.n) * p.n / p.omega;
    const TightBindingGap gap = tight_binding_gap(p);
    model.gamma_tb = gap.value;
    model.in_regime = gap.in_regime;
    return model;
}

std::vector<double> gaussian_well(const DoubleWellParams& p, Well which) {
    const double center = which == Well::left ? p.left_center() : p.right_center();
    const double sigma_sq = static_cast<double>(p.n) * p.n / p.omega;
    std::vector<double> phi(static_cast<std::size_t>(p.n) + 1);
    double norm_sq = 0.0;
    for (int w = 0; w <= p.n; ++w) {
        const double d = w - center;
        phi[w] = std::exp(-d * d / (2.0 * sigma_sq));
        norm_sq += phi[w] * phi[w];
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (double& v : phi) v *= inv_norm;
    return phi;
}

double log_binomial(int n, int w) {
    if (w < 0 || w > n) {
        throw std::invalid_argument("log_binomial: weight out of range");
    }
    return std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0);
}

namespace {

// log D(w) up to a common constant; -inf marks zero amplitude.
std::vector<double> log_weights(const std::vector<double>& phi) {
    const int n = static_cast<int>(phi.size()) - 1;
    if (n < 1) {
        throw std::invalid_argument("classical_distribution: wavefunction too short");
    }
    std::vector<double> lw(phi.size(), -std::numeric_limits<double>::infinity());
    for (int w = 0; w <= n; ++w) {
        if (phi[w] > 0.0) {
            lw[w] = 0.5 * log_binomial(n, w) + std::log(phi[w]);
        }
    }
    return lw;
}

double log_sum_exp(const std::vector<double>& lw, std::size_t begin, std::size_t end) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = begin; i < end; ++i) peak = std::max(peak, lw[i]);
    if (!std::isfinite(peak)) return peak;
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        if (std::isfinite(lw[i])) acc += std::exp(lw[i] - peak);
    }
    return peak + std::log(acc);
}

}  // namespace

HammingDistribution classical_distribution(const std::vector<double>& phi) {
    const std::vector<double> lw = log_weights(phi);
    const double log_norm = log_sum_exp(lw, 0, lw.size());
    if (!std::isfinite(log_norm)) {
        throw std::runtime_error(
            "classical_distribution: all sqrt-binomial-weighted amplitudes vanish");
    }
    HammingDistribution dist;
    dist.weights.resize(lw.size());
    for (std::size_t i = 0; i < lw.size(); ++i) {
        dist.weights[i] = std::isfinite(lw[i]) ? std::exp(lw[i] - log_norm) : 0.0;
    }
    return dist;
}

double right_well_mass_exact(const DoubleWellParams& p) {
    const std::vector<double> phi = gaussian_well(p, Well::left);
    const std::vector<double> lw = log_weights(phi);
    const double log_norm = log_sum_exp(lw, 0, lw.size());
    const int w_right = p.right_well_site();
    const double log_tail = log_sum_exp(lw, static_cast<std::size_t>(w_right), lw.size());
    if (!std::isfinite(log_tail)) return 0.0;
    return std::exp(log_tail - log_norm);
}

double right_well_mass_approx(const DoubleWellParams& p) {
    const double exponent = -p.delta * p.delta * (p.n + p.omega / 2.0);
    return std::exp(exponent) / (2.0 * std::sqrt(std::numbers::pi));
}

namespace {

SymmetricTridiagonal continuum_hamiltonian(const DoubleWellParams& p, int grid_points,
                                           double s, std::vector<double>* grid_out) {
    if (grid_points < 100) {
        throw std::invalid_argument("continuum grid needs at least 100 points");
    }
    const double sigma = p.n / std::sqrt(p.omega);
    const double lo = p.left_center() - 5.0 * sigma;
    const double hi = p.right_center() + 5.0 * sigma;
    const double h = (hi - lo) / (grid_points - 1);
    if (h > sigma / 10.0) {
        throw std::invalid_argument("continuum grid too coarse: fewer than 10 points per sigma");
    }

    SymmetricTridiagonal m;
    m.diag.resize(grid_points);
    m.offdiag.assign(grid_points - 1, -0.5 / (h * h));
    if (grid_out) grid_out->resize(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double w = lo + i * h;
        m.diag[i] = 1.0 / (h * h) + v_quartic_at(w, p) + v_linear_at(w, s, p);
        if (grid_out) (*grid_out)[i] = w;
    }
    return m;
}

}  // namespace

double continuum_gap(const DoubleWellParams& p, int grid_points, AnnealPoint s) {
    const SymmetricTridiagonal m = continuum_hamiltonian(p, grid_points, s.s, nullptr);
    const EigenPair eig = lowest_two_eigenvalues(m);
    return eig.e1 - eig.e0;
}

ContinuumGroundState continuum_ground_state(const DoubleWellParams& p, int grid_points,
                                            AnnealPoint s) {
    ContinuumGroundState state;
    const SymmetricTridiagonal m =
        continuum_hamiltonian(p, grid_points, s.s, &state.grid);
    state.psi = ground_state_vector(m);
    return state;
}

}  // namespace stoq
