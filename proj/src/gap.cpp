#include "stoqbench/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stoqbench/fit.hpp"
#include "stoqbench/parallel.hpp"
#include "stoqbench/tridiagonal.hpp"

namespace stoq {

double gap_at(const ProblemInstance& instance, AnnealPoint s) {
    const SymmetricTridiagonal m = build_tridiagonal(instance, s);
    const EigenPair eig = lowest_two_eigenvalues(m);
    const double gamma = eig.e1 - eig.e0;
    if (!(gamma > 0.0)) {
        throw std::runtime_error("spectral gap not strictly positive");
    }
    return gamma;
}

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kRefineTol = 1e-6;

}  // namespace

GapCurve min_gap_scan(const ProblemInstance& instance, int coarse_points, int threads) {
    if (coarse_points < 3) {
        throw std::invalid_argument("min_gap_scan requires coarse_points >= 3");
    }

    GapCurve curve;
    curve.samples.resize(coarse_points);
    parallel_for(static_cast<std::size_t>(coarse_points), threads, [&](std::size_t i) {
        const double s = static_cast<double>(i) / (coarse_points - 1);
        curve.samples[i] = {s, gap_at(instance, s)};
    });

    std::size_t imin = 0;
    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        if (curve.samples[i].gamma < curve.samples[imin].gamma) imin = i;
    }

    // Golden-section refinement on the bracket around the coarse minimum.
    // A boundary minimum leaves only a one-sided bracket; flag it.
    double a, b;
    if (imin == 0) {
        a = curve.samples[0].s;
        b = curve.samples[1].s;
        curve.boundary_refined = true;
    } else if (imin + 1 == curve.samples.size()) {
        a = curve.samples[imin - 1].s;
        b = curve.samples[imin].s;
        curve.boundary_refined = true;
    } else {
        a = curve.samples[imin - 1].s;
        b = curve.samples[imin + 1].s;
    }

    double x1 = b - kGoldenRatio * (b - a);
    double x2 = a + kGoldenRatio * (b - a);
    double f1 = gap_at(instance, x1);
    double f2 = gap_at(instance, x2);
    curve.samples.push_back({x1, f1});
    curve.samples.push_back({x2, f2});
    while (b - a > kRefineTol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGoldenRatio * (b - a);
            f1 = gap_at(instance, x1);
            curve.samples.push_back({x1, f1});
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGoldenRatio * (b - a);
            f2 = gap_at(instance, x2);
            curve.samples.push_back({x2, f2});
        }
    }

    std::sort(curve.samples.begin(), curve.samples.end(),
              [](const GapSample& lhs, const GapSample& rhs) { return lhs.s < rhs.s; });

    const auto best = std::min_element(
        curve.samples.begin(), curve.samples.end(),
        [](const GapSample& lhs, const GapSample& rhs) { return lhs.gamma < rhs.gamma; });
    curve.gamma_min = best->gamma;
    curve.s_star = best->s;
    curve.cost = 1.0 / (curve.gamma_min * curve.gamma_min);
    return curve;
}

QuantumCostSeries quantum_cost_series(
    const std::vector<int>& n_list,
    const std::function<ProblemInstance(int)>& instance_for, int coarse_points,
    int threads) {
    QuantumCostSeries series;
    for (int n : n_list) {
        try {
            const GapCurve curve = min_gap_scan(instance_for(n), coarse_points, threads);
            series.points.push_back({n, curve.s_star, curve.gamma_min, curve.cost});
        } catch (const std::exception& err) {
            series.failures.emplace_back(n, err.what());
        }
    }

    series.loglog_slope = std::numeric_limits<double>::quiet_NaN();
    if (series.points.size() >= 2) {
        std::vector<double> lx, ly;
        for (const auto& p : series.points) {
            lx.push_back(std::log(static_cast<double>(p.n)));
            ly.push_back(std::log(p.cost));
        }
        series.loglog_slope = fit_linear(lx, ly).slope;
    }
    return series;
}

QuantumCostSeries quantum_cost_series(const std::vector<int>& n_list, int coarse_points,
                                      int threads) {
    return quantum_cost_series(
        n_list,
        [](int n) { return ProblemInstance::double_well(default_double_well(n)); },
        coarse_points, threads);
}

}  // namespace stoq
