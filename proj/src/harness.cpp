#include "stoqbench/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stoqbench/parallel.hpp"

namespace stoq {

double estimate_cost(long walkers, long timesteps, double success_rate) {
    if (walkers < 1 || timesteps < 1) {
        throw std::invalid_argument("estimate_cost requires walkers, timesteps >= 1");
    }
    if (!(success_rate > 0.0) || success_rate > 1.0) {
        throw std::invalid_argument(
            "estimate_cost requires success_rate in (0, 1]; widen trials or walkers");
    }
    return static_cast<double>(walkers) * static_cast<double>(timesteps) / success_rate;
}

namespace {

double measure_success_rate_opts(const ProblemInstance& instance,
                                 const Schedule& schedule, int walkers, int trials,
                                 std::uint64_t seed, int threads,
                                 const AnnealOptions& options) {
    if (trials < 1) {
        throw std::invalid_argument("measure_success_rate requires trials >= 1");
    }
    std::vector<char> outcomes(trials, 0);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        const TrialRecord record =
            run_anneal(instance, schedule, walkers, derive_seed(seed, i), options);
        outcomes[i] = record.success ? 1 : 0;
    });
    long hits = 0;
    for (char c : outcomes) hits += c;
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace

double measure_success_rate(const ProblemInstance& instance, const Schedule& schedule,
                            int walkers, int trials, std::uint64_t seed, int threads) {
    return measure_success_rate_opts(instance, schedule, walkers, trials, seed, threads,
                                     AnnealOptions{});
}

CalibrationResult calibrate_walkers(const ProblemInstance& instance,
                                    const Schedule& schedule, Band band, int trials,
                                    std::uint64_t seed, int walker_cap, int threads) {
    if (trials < 20) {
        throw std::invalid_argument("calibrate_walkers requires trials >= 20");
    }
    if (!(band.lo > 0.0) || !(band.hi <= 1.0) || !(band.lo < band.hi)) {
        throw std::invalid_argument("calibrate_walkers: malformed band");
    }

    CalibrationResult result;
    result.n = instance.n();
    result.trials = trials;

    int probe_index = 0;
    std::vector<std::pair<int, double>> measured;
    const auto rate_at = [&](int walkers) {
        const double rate = measure_success_rate(
            instance, schedule, walkers, trials,
            derive_seed(seed, 0x9e3779b9ULL + probe_index), threads);
        ++probe_index;
        measured.emplace_back(walkers, rate);
        return rate;
    };

    const auto finish = [&](int walkers, double rate, bool flagged, std::string reason) {
        result.walkers = walkers;
        result.success_rate = rate;
        result.flagged = flagged;
        result.reason = std::move(reason);
        std::sort(measured.begin(), measured.end());
        for (std::size_t i = 1; i < measured.size(); ++i) {
            if (measured[i].second + 0.10 < measured[i - 1].second) {
                result.flagged = true;
                if (!result.reason.empty()) result.reason += "; ";
                result.reason += "success rate not monotone across probes";
                break;
            }
        }
        return result;
    };

    int w = 1;
    double rate = rate_at(w);
    if (rate >= band.lo) {
        if (rate <= band.hi) return finish(w, rate, false, "");
        return finish(w, rate, true, "above band at minimum walker count");
    }

    // Exponential bracketing upward.
    int w_lo = w;
    while (true) {
        const long doubled = static_cast<long>(w) * 2;
        if (doubled > walker_cap) {
            const double cap_rate = rate_at(walker_cap);
            if (cap_rate >= band.lo && cap_rate <= band.hi) {
                return finish(walker_cap, cap_rate, false, "");
            }
            if (cap_rate < band.lo) {
                return finish(walker_cap, cap_rate, true, "below band at walker cap");
            }
            w = walker_cap;
            rate = cap_rate;
            break;
        }
        w = static_cast<int>(doubled);
        rate = rate_at(w);
        if (rate >= band.lo) break;
        w_lo = w;
    }
    if (rate <= band.hi) {
        return finish(w, rate, false, "");
    }

    // Bisect (w_lo: below band, w: at or above band.lo).
    int w_hi = w;
    double hi_rate = rate;
    while (w_hi - w_lo > 1) {
        const int mid = w_lo + (w_hi - w_lo) / 2;
        const double mid_rate = rate_at(mid);
        if (mid_rate < band.lo) {
            w_lo = mid;
        } else {
            w_hi = mid;
            hi_rate = mid_rate;
            if (mid_rate <= band.hi) {
                return finish(mid, mid_rate, false, "");
            }
        }
    }
    return finish(w_hi, hi_rate, true,
                  "band skipped between adjacent walker counts; nearest returned");
}

namespace {

double series_dt(const ProblemInstance& instance, long steps, double anneal_time) {
    return std::min(default_dt(instance),
                    anneal_time / static_cast<double>(steps));
}

}  // namespace

SsmcSeries ssmc_cost_series(const std::vector<int>& n_list, const SeriesOptions& options,
                            std::uint64_t seed) {
    if (n_list.empty()) {
        throw std::invalid_argument("ssmc_cost_series requires a nonempty size list");
    }
    SsmcSeries series;
    series.options = options;

    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        try {
            const ProblemInstance instance =
                ProblemInstance::double_well(default_double_well(n));
            const double dt =
                options.dt > 0.0
                    ? options.dt
                    : series_dt(instance, options.schedule_steps, options.anneal_time);
            series.dt_used = dt;
            const Schedule schedule = linear_schedule(options.schedule_steps, dt);
            const std::uint64_t n_seed = derive_seed(seed, 1000 + idx);

            const CalibrationResult calib =
                calibrate_walkers(instance, schedule, options.band,
                                  options.trials_per_rep, n_seed, options.walker_cap,
                                  options.threads);
            series.calibrations.push_back(calib);

            std::vector<double> costs;
            for (int rep = 0; rep < options.repetitions; ++rep) {
                const double rate = measure_success_rate(
                    instance, schedule, calib.walkers, options.trials_per_rep,
                    derive_seed(n_seed, 0xabcd0000ULL + rep), options.threads);
                costs.push_back(
                    estimate_cost(calib.walkers, options.schedule_steps, rate));
            }
            double mean = 0.0;
            for (double c : costs) mean += c;
            mean /= static_cast<double>(costs.size());
            double var = 0.0;
            for (double c : costs) var += (c - mean) * (c - mean);
            const double std_dev =
                costs.size() > 1 ? std::sqrt(var / static_cast<double>(costs.size() - 1))
                                 : 0.0;
            series.points.push_back({n, mean, std_dev, calib.walkers,
                                     calib.success_rate});
        } catch (const std::exception& err) {
            series.failures.push_back("n=" + std::to_string(n) + ": " + err.what());
        }
    }
    return series;
}

SpikeComparison spike_comparison(const std::vector<int>& n_list, double alpha,
                                 int walkers, std::uint64_t seed,
                                 const SpikeOptions& options) {
    SpikeComparison cmp;

    const QuantumCostSeries quantum = quantum_cost_series(
        n_list,
        [alpha](int n) { return ProblemInstance::spike(SpikeParams(n, alpha)); },
        options.gap_coarse_points, options.threads);
    cmp.adiabatic = quantum.points;
    for (const auto& [n, what] : quantum.failures) {
        cmp.failures.push_back("adiabatic n=" + std::to_string(n) + ": " + what);
    }

    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        try {
            const ProblemInstance instance =
                ProblemInstance::spike(SpikeParams(n, alpha));
            const long steps =
                std::max(options.steps_floor,
                         std::lround(options.steps_per_qubit * n));
            const double dt = options.dt > 0.0 ? options.dt : default_dt(instance);
            const Schedule schedule = linear_schedule(steps, dt);
            AnnealOptions anneal;
            anneal.adaptive_dt = options.adaptive_dt;
            const double rate = measure_success_rate_opts(
                instance, schedule, walkers, options.trials,
                derive_seed(seed, 5000 + idx), options.threads, anneal);
            cmp.ssmc.push_back(
                {n, estimate_cost(walkers, steps, rate), 0.0, walkers, rate});
            cmp.ssmc_timesteps.push_back(steps);
        } catch (const std::exception& err) {
            cmp.failures.push_back("ssmc n=" + std::to_string(n) + ": " + err.what());
        }
    }

    const auto loglog = [](const auto& points, auto cost_of, auto n_of) {
        std::vector<double> lx, ly;
        for (const auto& p : points) {
            lx.push_back(std::log(static_cast<double>(n_of(p))));
            ly.push_back(std::log(cost_of(p)));
        }
        return fit_linear(lx, ly);
    };
    if (cmp.adiabatic.size() < 3 || cmp.ssmc.size() < 3) {
        throw std::runtime_error(
            "spike_comparison: fewer than 3 valid points; fit degenerate");
    }
    cmp.adiabatic_fit = loglog(
        cmp.adiabatic, [](const QuantumCostPoint& p) { return p.cost; },
        [](const QuantumCostPoint& p) { return p.n; });
    cmp.ssmc_fit = loglog(
        cmp.ssmc, [](const CostPoint& p) { return p.cost; },
        [](const CostPoint& p) { return p.n; });
    cmp.adiabatic_exponent = cmp.adiabatic_fit.slope;
    cmp.ssmc_exponent = cmp.ssmc_fit.slope;
    return cmp;
}

}  // namespace stoq
