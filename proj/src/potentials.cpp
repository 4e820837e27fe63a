#include "stoqbench/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace stoq {

namespace {

void check_weight(int w, int n) {
    if (w < 0 || w > n) {
        throw std::invalid_argument("weight out of range [0, n]");
    }
}

}  // namespace

double v_quartic_at(double w, const DoubleWellParams& p) {
    const double x = w / p.n - 0.5 - p.delta / 2.0;
    const double x2 = x * x;
    const double n2 = static_cast<double>(p.n) * p.n;
    const double w2 = p.omega * p.omega;
    return w2 / (2.0 * p.delta * p.delta * n2) * x2 * x2 - w2 / (4.0 * n2) * x2;
}

double v_quartic(int w, const DoubleWellParams& p) {
    check_weight(w, p.n);
    return v_quartic_at(w, p);
}

double v_linear_at(double w, double s, const DoubleWellParams& p) {
    const double x = w / p.n - 0.5 - p.delta / 2.0;
    return p.tau * (-2.0 * s + 1.0) * x;
}

double v_linear(int w, AnnealPoint s, const DoubleWellParams& p) {
    check_weight(w, p.n);
    return v_linear_at(w, s.s, p);
}

double v_fict(int w, int n) {
    check_weight(w, n);
    const double y = static_cast<double>(w) / n - 0.5;
    const double y2 = y * y;
    return -(2.0 / n) * y2 + 2.0 * y2 + 2.0 * y2 * y2 + 4.0 * y2 * y2 * y2;
}

double v_total(int w, AnnealPoint s, const DoubleWellParams& p) {
    check_weight(w, p.n);
    return v_quartic_at(w, p) + v_linear_at(w, s.s, p) - v_fict(w, p.n);
}

double v_spike(int w, const SpikeParams& p) {
    check_weight(w, p.n);
    const double height = p.barrier_height();
    if (std::abs(w - p.barrier_center()) < height / 2.0) {
        return w + height;
    }
    return w;
}

}  // namespace stoq
