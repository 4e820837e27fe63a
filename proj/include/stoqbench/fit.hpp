#pragma once

#include <cstddef>
#include <vector>

namespace stoq {

/// Ordinary least-squares line y = slope * x + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
};

/// Requires at least two distinct x values; throws std::invalid_argument
/// otherwise.
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stoq
