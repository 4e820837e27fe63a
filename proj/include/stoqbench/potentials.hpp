#pragma once

#include "stoqbench/model.hpp"

namespace stoq {

// Every potential is a pure function of its arguments; repeated evaluation is
// bit-identical. Integer-weight entry points validate 0 <= w <= n; the
// *_at variants evaluate the same expression at a real-valued coordinate and
// back the continuum discretization.

/// Symmetric quartic double well,
/// (omega^2 / (2 delta^2 n^2)) x^4 - (omega^2 / (4 n^2)) x^2
/// with x = w/n - 1/2 - delta/2. Minima at w = n/2 and w = n/2 + delta*n.
double v_quartic(int w, const DoubleWellParams& params);
double v_quartic_at(double w, const DoubleWellParams& params);

/// Tilt term tau (-2s + 1) x: favors the left well for s < 1/2, the right
/// well for s > 1/2, and vanishes at s = 1/2.
double v_linear(int w, AnnealPoint s, const DoubleWellParams& params);
double v_linear_at(double w, double s, const DoubleWellParams& params);

/// Counterterm -(2/n) y^2 + 2 y^2 + 2 y^4 + 4 y^6 with y = w/n - 1/2.
/// Subtracted from the real potential so that in the continuum limit it
/// cancels the weight dependence of the hopping amplitudes.
double v_fict(int w, int n);

/// Full walker-visible potential V = V_q + V_l - V_fict.
double v_total(int w, AnnealPoint s, const DoubleWellParams& params);

/// Linear ramp plus rectangular barrier: w + n^alpha when |w - n/4| < n^alpha/2,
/// otherwise w. Global minimum at w = 0.
double v_spike(int w, const SpikeParams& params);

}  // namespace stoq
