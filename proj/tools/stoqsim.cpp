// stoqsim: command-line front end for the stoquastic-adiabatic vs
// substochastic Monte Carlo benchmark suite. Every subcommand is a pure
// function of (config, flags, master seed) to output bytes.
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
// 3 completed but flagged (e.g. calibration out of band).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stoqbench/analytics.hpp"
#include "stoqbench/gap.hpp"
#include "stoqbench/harness.hpp"
#include "stoqbench/io.hpp"
#include "stoqbench/model.hpp"
#include "stoqbench/ssmc.hpp"
#include "stoqbench/tridiagonal.hpp"

namespace {

using namespace stoq;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitFlagged = 3;

std::uint64_t master_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("STOQ_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

// "-" streams to stdout, anything else to a file (LF endings).
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::invalid_argument("cannot open output file: " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    out << bytes;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        values.push_back(std::stoi(token));
    }
    if (values.empty()) {
        throw std::invalid_argument("empty n list");
    }
    return values;
}

ProblemConfig resolve_config(const std::string& config_path, int n_flag,
                             const std::string& problem, double alpha) {
    if (!config_path.empty()) {
        ProblemConfig config = config_from_file(config_path);
        if (n_flag > 0) {
            // --n overrides the config's size but keeps the problem kind.
            if (config.instance.kind() == ProblemInstance::Kind::spike) {
                const double a = config.instance.spike_params()->alpha;
                config.instance = ProblemInstance::spike(SpikeParams(n_flag, a));
            } else {
                config.instance =
                    ProblemInstance::double_well(default_double_well(n_flag));
            }
        }
        return config;
    }
    if (n_flag <= 0) {
        throw std::invalid_argument("need --config or --n");
    }
    ProblemConfig config;
    if (problem == "spike") {
        config.instance = ProblemInstance::spike(SpikeParams(n_flag, alpha));
    } else if (problem == "double_well") {
        config.instance = ProblemInstance::double_well(default_double_well(n_flag));
    } else {
        throw std::invalid_argument("unknown problem kind: " + problem);
    }
    return config;
}

struct GapArgs {
    std::string config_path;
    int n = 0;
    int s_points = 201;
    std::string out = "-";
    int threads = 1;
};

int cmd_gap(const GapArgs& args) {
    const ProblemConfig config = resolve_config(args.config_path, args.n, "double_well", 0.4);
    const GapCurve curve = min_gap_scan(config.instance, args.s_points, args.threads);
    OutputTarget target(args.out);
    write_gap_curve_csv(target.stream(), curve);
    std::cout << "n=" << config.instance.n() << " s_star=" << format_double(curve.s_star)
              << " gamma_min=" << format_double(curve.gamma_min)
              << " cost=" << format_double(curve.cost);
    if (curve.boundary_refined) std::cout << " boundary_refined=1";
    std::cout << '\n';
    return kExitOk;
}

struct QuantumCostArgs {
    std::string n_list = "1000,2000,4000,8000,16000";
    int s_points = 201;
    std::string out = "-";
    int threads = 1;
};

int cmd_quantum_cost(const QuantumCostArgs& args) {
    const std::vector<int> n_list = parse_n_list(args.n_list);
    const QuantumCostSeries series = quantum_cost_series(n_list, args.s_points, args.threads);
    OutputTarget target(args.out);
    write_quantum_cost_csv(target.stream(), series);
    for (const auto& [n, what] : series.failures) {
        std::cerr << "n=" << n << " failed: " << what << '\n';
    }
    if (series.points.size() >= 2) {
        std::cout << "loglog_slope=" << format_double(series.loglog_slope) << '\n';
    } else {
        std::cout << "loglog_slope=n/a (need >= 2 points)\n";
    }
    return series.failures.empty() ? kExitOk : kExitFlagged;
}

struct SsmcRunArgs {
    std::string config_path;
    int n = 0;
    std::string problem = "double_well";
    double alpha = 0.4;
    int walkers = 1000;
    long steps = 0;
    double dt = 0.0;
    bool adaptive_dt = false;
    long snapshots = 0;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
};

int cmd_ssmc_run(const SsmcRunArgs& args) {
    ProblemConfig config =
        resolve_config(args.config_path, args.n, args.problem, args.alpha);
    if (args.steps > 0) {
        config.schedule.total_steps = args.steps;
        config.has_schedule = true;
    }
    if (args.dt > 0.0) config.schedule.dt = args.dt;
    if (config.schedule.dt <= 0.0) config.schedule.dt = default_dt(config.instance);
    const Schedule schedule =
        linear_schedule(config.schedule.total_steps, config.schedule.dt);

    AnnealOptions options;
    options.snapshot_stride = args.snapshots;
    options.adaptive_dt = args.adaptive_dt;
    const std::uint64_t seed = master_seed(args.seed);
    const TrialRecord record =
        run_anneal(config.instance, schedule, args.walkers, seed, options);

    if (args.out == "-") {
        std::cout << trial_record_to_json(record) << '\n';
    } else {
        write_file(args.out + ".jsonl", trial_record_to_json(record) + "\n");
        std::ostringstream snapshots;
        write_snapshot_csv(snapshots, record);
        write_file(args.out + ".snapshots.csv", snapshots.str());
        write_file(args.out + ".manifest.json",
                   run_manifest_json(config, seed, "ssmc run") + "\n");
    }
    return record.extinct ? kExitFlagged : kExitOk;
}

struct SsmcCalibrateArgs {
    std::string config_path;
    int n = 0;
    long steps = 2000;
    double dt = 0.0;
    double anneal_time = 8.0;
    int trials = 100;
    double band_lo = 0.70;
    double band_hi = 0.75;
    int walker_cap = 1 << 20;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

int cmd_ssmc_calibrate(const SsmcCalibrateArgs& args) {
    const ProblemConfig config =
        resolve_config(args.config_path, args.n, "double_well", 0.4);
    double dt = args.dt;
    if (dt <= 0.0) {
        dt = std::min(default_dt(config.instance), args.anneal_time / args.steps);
    }
    const Schedule schedule = linear_schedule(args.steps, dt);
    const CalibrationResult result =
        calibrate_walkers(config.instance, schedule, Band{args.band_lo, args.band_hi},
                          args.trials, master_seed(args.seed), args.walker_cap,
                          args.threads);
    nlohmann::json doc;
    doc["n"] = result.n;
    doc["walkers"] = result.walkers;
    doc["success_rate"] = result.success_rate;
    doc["trials"] = result.trials;
    doc["flagged"] = result.flagged;
    if (result.flagged) doc["reason"] = result.reason;
    std::cout << doc.dump() << '\n';
    return result.flagged ? kExitFlagged : kExitOk;
}

struct SsmcSeriesArgs {
    std::string n_list = "40,60,80,100,120";
    long steps = 2000;
    int reps = 10;
    int trials = 100;
    double dt = 0.0;
    double anneal_time = 8.0;
    int walker_cap = 1 << 20;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
    int threads = 1;
};

int cmd_ssmc_series(const SsmcSeriesArgs& args) {
    SeriesOptions options;
    options.schedule_steps = args.steps;
    options.repetitions = args.reps;
    options.trials_per_rep = args.trials;
    options.dt = args.dt;
    options.anneal_time = args.anneal_time;
    options.walker_cap = args.walker_cap;
    options.threads = args.threads;
    const std::uint64_t seed = master_seed(args.seed);
    const SsmcSeries series = ssmc_cost_series(parse_n_list(args.n_list), options, seed);

    std::ostringstream csv;
    write_cost_summary_csv(csv, series);
    std::ostringstream jsonl;
    for (const CostPoint& p : series.points) {
        nlohmann::json doc;
        doc["n"] = p.n;
        doc["cost"] = p.cost;
        doc["std"] = p.std_dev;
        doc["walkers"] = p.walkers;
        doc["success_rate"] = p.success_rate;
        jsonl << doc.dump() << '\n';
    }

    if (args.out == "-") {
        std::cout << csv.str();
    } else {
        write_file(args.out + ".csv", csv.str());
        write_file(args.out + ".jsonl", jsonl.str());
        nlohmann::json manifest;
        manifest["version"] = kVersion;
        manifest["command"] = "ssmc series";
        manifest["master_seed"] = seed;
        manifest["n_list"] = args.n_list;
        manifest["schedule_steps"] = options.schedule_steps;
        manifest["repetitions"] = options.repetitions;
        manifest["trials_per_rep"] = options.trials_per_rep;
        manifest["dt"] = series.dt_used;
        manifest["anneal_time"] = options.anneal_time;
        write_file(args.out + ".manifest.json", manifest.dump() + "\n");
    }
    for (const std::string& failure : series.failures) {
        std::cerr << failure << '\n';
    }
    bool flagged = !series.failures.empty();
    for (const CalibrationResult& c : series.calibrations) {
        if (c.flagged) {
            std::cerr << "calibration n=" << c.n << " flagged: " << c.reason << '\n';
            flagged = true;
        }
    }
    return flagged ? kExitFlagged : kExitOk;
}

struct PredictArgs {
    int n = 100;
    double s = 0.25;
    std::string n_list;
    std::string well = "exact";
    std::string out = "-";
};

int cmd_predict_tb_gap(const PredictArgs& args) {
    const TightBindingGap gap = tight_binding_gap(default_double_well(args.n));
    std::cout << "gamma_tb=" << format_double(gap.value) << '\n';
    if (!gap.in_regime) {
        std::cerr << "out of regime: delta^2 omega <= 3\n";
        return kExitFlagged;
    }
    return kExitOk;
}

int cmd_predict_pr(const PredictArgs& args) {
    const DoubleWellParams params = default_double_well(args.n);
    std::cout << "pr_exact=" << format_double(right_well_mass_exact(params))
              << " pr_approx=" << format_double(right_well_mass_approx(params)) << '\n';
    return kExitOk;
}

int cmd_predict_dist(const PredictArgs& args) {
    HammingDistribution dist;
    if (args.well == "exact") {
        const ProblemInstance inst =
            ProblemInstance::double_well(default_double_well(args.n));
        const SymmetricTridiagonal m = build_tridiagonal(inst, args.s);
        dist = classical_distribution(ground_state_vector(m));
    } else if (args.well == "left" || args.well == "right") {
        const Well which = args.well == "left" ? Well::left : Well::right;
        dist = classical_distribution(gaussian_well(default_double_well(args.n), which));
    } else {
        throw std::invalid_argument("--well must be exact, left, or right");
    }
    OutputTarget target(args.out);
    write_distribution_csv(target.stream(), dist);
    return kExitOk;
}

int cmd_predict_table(const PredictArgs& args) {
    if (args.n_list.empty()) {
        throw std::invalid_argument("predict table needs --n-list");
    }
    OutputTarget target(args.out);
    target.stream() << "n,gamma_tb,gamma_exact,pr_exact,pr_approx\n";
    for (int n : parse_n_list(args.n_list)) {
        const DoubleWellParams params = default_double_well(n);
        const ProblemInstance inst = ProblemInstance::double_well(params);
        target.stream() << n << ',' << format_double(tight_binding_gap(params).value)
                        << ',' << format_double(gap_at(inst, 0.5)) << ','
                        << format_double(right_well_mass_exact(params)) << ','
                        << format_double(right_well_mass_approx(params)) << '\n';
    }
    return kExitOk;
}

struct SpikeArgs {
    std::string n_list = "80,160,320,640";
    double alpha = 0.4;
    int walkers = 8000;
    int trials = 200;
    long steps_floor = 2000;
    double steps_per_qubit = 6.25;
    int s_points = 201;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
    int threads = 1;
};

int spike_regime_flag(double alpha) {
    if (alpha > 0.0 && alpha < 1.0) return kExitOk;
    std::cerr << "alpha=" << alpha << " is outside the (0, 1) regime; accepted\n";
    return kExitFlagged;
}

int cmd_spike_gap(const SpikeArgs& args) {
    const QuantumCostSeries series = quantum_cost_series(
        parse_n_list(args.n_list),
        [&](int n) { return ProblemInstance::spike(SpikeParams(n, args.alpha)); },
        args.s_points, args.threads);
    OutputTarget target(args.out);
    write_quantum_cost_csv(target.stream(), series);
    if (series.points.size() >= 2) {
        std::cout << "adiabatic_exponent=" << format_double(series.loglog_slope) << '\n';
    }
    return spike_regime_flag(args.alpha);
}

int cmd_spike_ssmc(const SpikeArgs& args) {
    const std::uint64_t seed = master_seed(args.seed);
    OutputTarget target(args.out);
    target.stream() << "n,cost,walkers,timesteps,success_rate\n";
    const std::vector<int> n_list = parse_n_list(args.n_list);
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        const ProblemInstance inst = ProblemInstance::spike(SpikeParams(n, args.alpha));
        const long steps = std::max(args.steps_floor,
                                    std::lround(args.steps_per_qubit * n));
        const Schedule schedule = linear_schedule(steps, default_dt(inst));
        AnnealOptions options;
        options.adaptive_dt = true;
        double hits = 0.0;
        for (int trial = 0; trial < args.trials; ++trial) {
            const TrialRecord record =
                run_anneal(inst, schedule, args.walkers,
                           derive_seed(derive_seed(seed, 5000 + idx), trial), options);
            if (record.success) hits += 1.0;
        }
        const double rate = hits / args.trials;
        const std::string cost =
            rate > 0.0 ? format_double(estimate_cost(args.walkers, steps, rate)) : "nan";
        target.stream() << n << ',' << cost << ',' << args.walkers << ',' << steps << ','
                        << format_double(rate) << '\n';
    }
    return spike_regime_flag(args.alpha);
}

int cmd_spike_compare(const SpikeArgs& args) {
    SpikeOptions options;
    options.trials = args.trials;
    options.steps_floor = args.steps_floor;
    options.steps_per_qubit = args.steps_per_qubit;
    options.gap_coarse_points = args.s_points;
    options.threads = args.threads;
    const SpikeComparison cmp = spike_comparison(
        parse_n_list(args.n_list), args.alpha, args.walkers, master_seed(args.seed),
        options);
    OutputTarget target(args.out);
    write_spike_comparison_csv(target.stream(), cmp);
    std::cout << "adiabatic_exponent=" << format_double(cmp.adiabatic_exponent)
              << " ssmc_exponent=" << format_double(cmp.ssmc_exponent)
              << " difference=" << format_double(cmp.ssmc_exponent - cmp.adiabatic_exponent)
              << '\n';
    for (const std::string& failure : cmp.failures) {
        std::cerr << failure << '\n';
    }
    return spike_regime_flag(args.alpha) == kExitFlagged || !cmp.failures.empty()
               ? kExitFlagged
               : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stoquastic adiabatic optimization vs substochastic Monte Carlo"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker thread cap")->capture_default_str();
    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "master seed (fallback: STOQ_SEED env)");

    GapArgs gap_args;
    CLI::App* gap = app.add_subcommand("gap", "minimum-gap scan over s");
    gap->add_option("--config", gap_args.config_path, "problem config JSON");
    gap->add_option("--n", gap_args.n, "qubit count (double-well defaults)");
    gap->add_option("--s-points", gap_args.s_points, "coarse scan points")
        ->capture_default_str();
    gap->add_option("--out", gap_args.out, "CSV output path or -")
        ->capture_default_str();

    QuantumCostArgs qc_args;
    CLI::App* qc = app.add_subcommand("quantum-cost", "adiabatic cost ladder");
    qc->add_option("--n-list", qc_args.n_list, "comma-separated sizes")
        ->capture_default_str();
    qc->add_option("--s-points", qc_args.s_points, "coarse scan points")
        ->capture_default_str();
    qc->add_option("--out", qc_args.out, "CSV output path or -")->capture_default_str();

    CLI::App* ssmc = app.add_subcommand("ssmc", "walker experiments");
    ssmc->require_subcommand(1);

    SsmcRunArgs run_args;
    CLI::App* run = ssmc->add_subcommand("run", "single annealing run");
    run->add_option("--config", run_args.config_path, "problem config JSON");
    run->add_option("--n", run_args.n, "qubit count");
    run->add_option("--problem", run_args.problem, "double_well | spike")
        ->capture_default_str();
    run->add_option("--alpha", run_args.alpha, "spike exponent")->capture_default_str();
    run->add_option("--walkers", run_args.walkers, "walker count")
        ->capture_default_str();
    run->add_option("--steps", run_args.steps, "timesteps");
    run->add_option("--dt", run_args.dt, "walker timestep (0: default)");
    run->add_flag("--adaptive-dt", run_args.adaptive_dt, "re-derive dt each step");
    run->add_option("--snapshots", run_args.snapshots, "snapshot stride (0: none)");
    run->add_option("--out", run_args.out, "output prefix or -")->capture_default_str();

    SsmcCalibrateArgs cal_args;
    CLI::App* calibrate = ssmc->add_subcommand("calibrate", "walker-count calibration");
    calibrate->add_option("--config", cal_args.config_path, "problem config JSON");
    calibrate->add_option("--n", cal_args.n, "qubit count");
    calibrate->add_option("--steps", cal_args.steps, "timesteps")->capture_default_str();
    calibrate->add_option("--dt", cal_args.dt, "walker timestep (0: series default)");
    calibrate->add_option("--anneal-time", cal_args.anneal_time, "time budget")
        ->capture_default_str();
    calibrate->add_option("--trials", cal_args.trials, "trials per probe")
        ->capture_default_str();
    calibrate->add_option("--band-lo", cal_args.band_lo, "band lower edge")
        ->capture_default_str();
    calibrate->add_option("--band-hi", cal_args.band_hi, "band upper edge")
        ->capture_default_str();
    calibrate->add_option("--walker-cap", cal_args.walker_cap, "search cap")
        ->capture_default_str();

    SsmcSeriesArgs series_args;
    CLI::App* series = ssmc->add_subcommand("series", "cost-vs-n experiment");
    series->add_option("--n-list", series_args.n_list, "comma-separated sizes")
        ->capture_default_str();
    series->add_option("--steps", series_args.steps, "timesteps")->capture_default_str();
    series->add_option("--reps", series_args.reps, "cost repetitions")
        ->capture_default_str();
    series->add_option("--trials", series_args.trials, "trials per probe")
        ->capture_default_str();
    series->add_option("--dt", series_args.dt, "walker timestep (0: series default)");
    series->add_option("--anneal-time", series_args.anneal_time, "time budget")
        ->capture_default_str();
    series->add_option("--walker-cap", series_args.walker_cap, "calibration cap")
        ->capture_default_str();
    series->add_option("--out", series_args.out, "output prefix or -")
        ->capture_default_str();

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand("predict", "closed-form predictions");
    predict->require_subcommand(1);
    CLI::App* tb = predict->add_subcommand("tb-gap", "tight-binding gap");
    tb->add_option("--n", predict_args.n, "qubit count")->capture_default_str();
    CLI::App* pr = predict->add_subcommand("pr", "right-well mass");
    pr->add_option("--n", predict_args.n, "qubit count")->capture_default_str();
    CLI::App* dist = predict->add_subcommand("dist", "weight distribution D(w)");
    dist->add_option("--n", predict_args.n, "qubit count")->capture_default_str();
    dist->add_option("--s", predict_args.s, "annealing parameter")
        ->capture_default_str();
    dist->add_option("--well", predict_args.well, "exact | left | right")
        ->capture_default_str();
    dist->add_option("--out", predict_args.out, "CSV output path or -")
        ->capture_default_str();
    CLI::App* table = predict->add_subcommand("table", "analytics summary CSV");
    table->add_option("--n-list", predict_args.n_list, "comma-separated sizes");
    table->add_option("--out", predict_args.out, "CSV output path or -")
        ->capture_default_str();

    SpikeArgs spike_args;
    CLI::App* spike = app.add_subcommand("spike", "spike-barrier benchmark");
    spike->require_subcommand(1);
    for (CLI::App* sub :
         {spike->add_subcommand("gap", "adiabatic costs"),
          spike->add_subcommand("ssmc", "walker costs"),
          spike->add_subcommand("compare", "both sides with power-law fits")}) {
        sub->add_option("--n-list", spike_args.n_list, "comma-separated sizes")
            ->capture_default_str();
        sub->add_option("--alpha", spike_args.alpha, "spike exponent")
            ->capture_default_str();
        sub->add_option("--walkers", spike_args.walkers, "walker count")
            ->capture_default_str();
        sub->add_option("--trials", spike_args.trials, "trials per size")
            ->capture_default_str();
        sub->add_option("--steps-floor", spike_args.steps_floor, "minimum timesteps")
            ->capture_default_str();
        sub->add_option("--steps-per-qubit", spike_args.steps_per_qubit,
                        "timestep growth per qubit")
            ->capture_default_str();
        sub->add_option("--s-points", spike_args.s_points, "coarse scan points")
            ->capture_default_str();
        sub->add_option("--out", spike_args.out, "CSV output path or -")
            ->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    gap_args.threads = qc_args.threads = cal_args.threads = series_args.threads =
        spike_args.threads = threads;
    run_args.seed = cal_args.seed = series_args.seed = spike_args.seed = seed;

    try {
        if (gap->parsed()) return cmd_gap(gap_args);
        if (qc->parsed()) return cmd_quantum_cost(qc_args);
        if (ssmc->parsed()) {
            if (ssmc->get_subcommand("run")->parsed()) return cmd_ssmc_run(run_args);
            if (ssmc->get_subcommand("calibrate")->parsed()) {
                return cmd_ssmc_calibrate(cal_args);
            }
            return cmd_ssmc_series(series_args);
        }
        if (predict->parsed()) {
            if (predict->get_subcommand("tb-gap")->parsed()) {
                return cmd_predict_tb_gap(predict_args);
            }
            if (predict->get_subcommand("pr")->parsed()) {
                return cmd_predict_pr(predict_args);
            }
            if (predict->get_subcommand("dist")->parsed()) {
                return cmd_predict_dist(predict_args);
            }
            return cmd_predict_table(predict_args);
        }
        if (spike->parsed()) {
            if (spike->get_subcommand("gap")->parsed()) return cmd_spike_gap(spike_args);
            if (spike->get_subcommand("ssmc")->parsed()) {
                return cmd_spike_ssmc(spike_args);
            }
            return cmd_spike_compare(spike_args);
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
