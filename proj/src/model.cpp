#include "stoqbench/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stoqbench/potentials.hpp"

namespace stoq {

AnnealPoint::AnnealPoint(double value) : s(value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        throw std::invalid_argument("annealing parameter s must lie in [0, 1]");
    }
}

DoubleWellParams::DoubleWellParams(int n_, double omega_, double delta_, double tau_)
    : n(n_), omega(omega_), delta(delta_), tau(tau_) {
    if (n < 1) {
        throw std::invalid_argument("double well requires n >= 1");
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("double well requires omega > 0");
    }
    if (!(delta > 0.0) || !(delta < 0.5)) {
        throw std::invalid_argument("double well requires 0 < delta < 1/2");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("double well requires tau >= 0");
    }
    if (right_well_site() > n) {
        throw std::invalid_argument("right well rounds off the lattice");
    }
}

int DoubleWellParams::left_well_site() const {
    return static_cast<int>(std::lround(left_center()));
}

int DoubleWellParams::right_well_site() const {
    return static_cast<int>(std::lround(right_center()));
}

DoubleWellParams default_double_well(int n) {
    if (n < 4) {
        throw std::invalid_argument(
            "default double well requires n >= 4 (wells collide with boundary)");
    }
    const double omega = 260.0 * std::sqrt(static_cast<double>(n));
    const double delta = 0.1 * std::pow(100.0 / n, 0.25);
    const double tau = 1000.0 / std::pow(static_cast<double>(n), 1.25);
    return DoubleWellParams(n, omega, delta, tau);
}

SpikeParams::SpikeParams(int n_, double alpha_) : n(n_), alpha(alpha_) {
    if (n < 4) {
        throw std::invalid_argument("spike requires n >= 4");
    }
    if (!(alpha >= 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("spike requires 0 <= alpha < 1");
    }
    const double half_width = barrier_height() / 2.0;
    if (!(barrier_center() - half_width > 0.0) ||
        !(barrier_center() + half_width < n)) {
        throw std::invalid_argument("spike barrier extends outside (0, n)");
    }
}

double SpikeParams::barrier_height() const {
    return std::pow(static_cast<double>(n), alpha);
}

double Schedule::s_at(long t) const {
    if (t < 0 || t > total_steps) {
        throw std::invalid_argument("schedule step index out of range");
    }
    return static_cast<double>(t) / static_cast<double>(total_steps);
}

Schedule linear_schedule(long total_steps, double dt) {
    if (total_steps < 1) {
        throw std::invalid_argument("schedule requires total_steps >= 1");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("schedule requires dt > 0");
    }
    return Schedule{total_steps, dt};
}

ProblemInstance ProblemInstance::double_well(DoubleWellParams params) {
    ProblemInstance inst(Kind::double_well, params.n);
    inst.dw_ = params;
    return inst;
}

ProblemInstance ProblemInstance::spike(SpikeParams params) {
    ProblemInstance inst(Kind::spike, params.n);
    inst.spike_ = params;
    return inst;
}

ProblemInstance ProblemInstance::free_field(int n) {
    if (n < 1) {
        throw std::invalid_argument("free field requires n >= 1");
    }
    return ProblemInstance(Kind::free_field, n);
}

std::string ProblemInstance::name() const {
    switch (kind_) {
        case Kind::double_well: return "double_well";
        case Kind::spike: return "spike";
        case Kind::free_field: return "free_field";
    }
    return "unknown";
}

double ProblemInstance::potential(int w, AnnealPoint s) const {
    if (w < 0 || w > n_) {
        throw std::invalid_argument("weight out of range [0, n]");
    }
    switch (kind_) {
        case Kind::double_well:
            return v_total(w, s, *dw_);
        case Kind::spike:
            // Diagonal of (1-s) sum_j (1-X_j)/2 contributes (1-s) n/2.
            return (1.0 - s.s) * n_ / 2.0 + s.s * v_spike(w, *spike_);
        case Kind::free_field:
            return 0.0;
    }
    return 0.0;
}

void ProblemInstance::fill_potential_table(AnnealPoint s, std::vector<double>& table) const {
    table.resize(static_cast<std::size_t>(n_) + 1);
    switch (kind_) {
        case Kind::double_well:
            for (int w = 0; w <= n_; ++w) table[w] = v_total(w, s, *dw_);
            return;
        case Kind::spike: {
            const double height = spike_->barrier_height();
            const double center = spike_->barrier_center();
            const double base = (1.0 - s.s) * n_ / 2.0;
            for (int w = 0; w <= n_; ++w) {
                const double barrier = std::abs(w - center) < height / 2.0 ? height : 0.0;
                table[w] = base + s.s * (w + barrier);
            }
            return;
        }
        case Kind::free_field:
            std::fill(table.begin(), table.end(), 0.0);
            return;
    }
}

double ProblemInstance::hopping_scale(AnnealPoint s) const {
    switch (kind_) {
        case Kind::double_well:
        case Kind::free_field:
            return 1.0 / n_;
        case Kind::spike:
            return (1.0 - s.s) / 2.0;
    }
    return 0.0;
}

std::vector<int> ProblemInstance::final_minimizers() const {
    double vmin = std::numeric_limits<double>::infinity();
    std::vector<double> values(static_cast<std::size_t>(n_) + 1);
    for (int w = 0; w <= n_; ++w) {
        values[w] = potential(w, AnnealPoint(1.0));
        vmin = std::min(vmin, values[w]);
    }
    const double tol = 1e-12 * (1.0 + std::abs(vmin));
    std::vector<int> sites;
    for (int w = 0; w <= n_; ++w) {
        if (values[w] - vmin <= tol) sites.push_back(w);
    }
    return sites;
}

std::vector<int> ProblemInstance::success_sites() const {
    switch (kind_) {
        case Kind::double_well:
            return {dw_->right_well_site()};
        case Kind::spike:
            return {0};
        case Kind::free_field:
            return final_minimizers();
    }
    return final_minimizers();
}

std::pair<int, int> ProblemInstance::rate_scan_window() const {
    switch (kind_) {
        case Kind::double_well: {
            // Both wells plus a margin of ~3 harmonic widths (sigma = n/sqrt(omega)).
            const int margin = std::max<int>(
                3, static_cast<int>(std::ceil(3.0 * n_ / std::sqrt(dw_->omega))));
            const int lo = std::max(0, dw_->left_well_site() - margin);
            const int hi = std::min(n_, dw_->right_well_site() + margin);
            return {lo, hi};
        }
        case Kind::spike: {
            const int margin = std::max<int>(
                3, static_cast<int>(std::ceil(1.5 * std::sqrt(static_cast<double>(n_)))));
            return {0, std::min(n_, n_ / 2 + margin)};
        }
        case Kind::free_field:
            return {0, n_};
    }
    return {0, n_};
}

}  // namespace stoq
