#include "stoqbench/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace stoq {

const char* const kVersion = "stoqbench 1.0.0";

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

using nlohmann::json;

json schedule_to_json(const Schedule& schedule) {
    return json{{"total_steps", schedule.total_steps}, {"dt", schedule.dt}};
}

}  // namespace

ProblemConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                    err.what());
    }
    if (!doc.is_object() || !doc.contains("problem") || !doc.contains("n")) {
        throw std::invalid_argument("config requires at least {problem, n}");
    }
    const std::string problem = doc.at("problem").get<std::string>();
    const int n = doc.at("n").get<int>();

    ProblemConfig config;
    if (problem == "double_well") {
        if (doc.contains("omega") || doc.contains("delta") || doc.contains("tau")) {
            if (!(doc.contains("omega") && doc.contains("delta") && doc.contains("tau"))) {
                throw std::invalid_argument(
                    "double_well config needs all of omega, delta, tau or none");
            }
            config.instance = ProblemInstance::double_well(
                DoubleWellParams(n, doc.at("omega").get<double>(),
                                 doc.at("delta").get<double>(),
                                 doc.at("tau").get<double>()));
        } else {
            config.instance = ProblemInstance::double_well(default_double_well(n));
        }
    } else if (problem == "spike") {
        const double alpha = doc.contains("alpha") ? doc.at("alpha").get<double>() : 0.4;
        config.instance = ProblemInstance::spike(SpikeParams(n, alpha));
    } else {
        throw std::invalid_argument("unknown problem kind: " + problem);
    }

    if (doc.contains("schedule")) {
        const json& sched = doc.at("schedule");
        config.schedule.total_steps = sched.at("total_steps").get<long>();
        config.schedule.dt = sched.contains("dt") ? sched.at("dt").get<double>() : 0.0;
        if (config.schedule.total_steps < 1) {
            throw std::invalid_argument("schedule requires total_steps >= 1");
        }
        if (config.schedule.dt < 0.0) {
            throw std::invalid_argument("schedule requires dt >= 0");
        }
        config.has_schedule = true;
    }
    return config;
}

ProblemConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

std::string config_to_json(const ProblemConfig& config) {
    json doc;
    doc["problem"] = config.instance.name();
    doc["n"] = config.instance.n();
    if (const DoubleWellParams* p = config.instance.double_well_params()) {
        doc["omega"] = p->omega;
        doc["delta"] = p->delta;
        doc["tau"] = p->tau;
    }
    if (const SpikeParams* p = config.instance.spike_params()) {
        doc["alpha"] = p->alpha;
    }
    if (config.has_schedule) {
        doc["schedule"] = schedule_to_json(config.schedule);
    }
    return doc.dump();
}

std::string trial_record_to_json(const TrialRecord& record) {
    json doc;
    doc["n"] = record.n;
    doc["problem"] = record.problem;
    doc["walkers"] = record.walkers;
    doc["timesteps"] = record.timesteps;
    doc["dt"] = record.dt;
    doc["seed"] = record.seed;
    doc["success"] = record.success;
    doc["extinct"] = record.extinct;
    if (record.extinct) {
        doc["extinct_step"] = record.extinct_step;
    }
    doc["final_histogram"] = record.final_histogram;
    json snaps = json::array();
    for (const PopulationSnapshot& snap : record.snapshots) {
        snaps.push_back(json{{"step", snap.step},
                             {"s", snap.s},
                             {"size", snap.size},
                             {"threshold", snap.threshold},
                             {"histogram", snap.histogram}});
    }
    doc["snapshots"] = snaps;
    return doc.dump();
}

void write_snapshot_csv(std::ostream& out, const TrialRecord& record) {
    out << "step,s,w,count\n";
    for (const PopulationSnapshot& snap : record.snapshots) {
        for (std::size_t w = 0; w < snap.histogram.size(); ++w) {
            if (snap.histogram[w] == 0) continue;
            out << snap.step << ',' << format_double(snap.s) << ',' << w << ','
                << snap.histogram[w] << '\n';
        }
    }
}

void write_gap_curve_csv(std::ostream& out, const GapCurve& curve) {
    out << "s,gamma\n";
    for (const GapSample& sample : curve.samples) {
        out << format_double(sample.s) << ',' << format_double(sample.gamma) << '\n';
    }
}

void write_quantum_cost_csv(std::ostream& out, const QuantumCostSeries& series) {
    out << "n,s_star,gamma_min,cost\n";
    for (const QuantumCostPoint& point : series.points) {
        out << point.n << ',' << format_double(point.s_star) << ','
            << format_double(point.gamma_min) << ',' << format_double(point.cost)
            << '\n';
    }
}

void write_cost_summary_csv(std::ostream& out, const SsmcSeries& series) {
    out << "n,mean_cost,std,walkers,success_rate\n";
    for (const CostPoint& point : series.points) {
        out << point.n << ',' << format_double(point.cost) << ','
            << format_double(point.std_dev) << ',' << point.walkers << ','
            << format_double(point.success_rate) << '\n';
    }
}

void write_distribution_csv(std::ostream& out, const HammingDistribution& dist) {
    out << "w,d\n";
    for (std::size_t w = 0; w < dist.weights.size(); ++w) {
        out << w << ',' << format_double(dist.weights[w]) << '\n';
    }
}

void write_spike_comparison_csv(std::ostream& out, const SpikeComparison& cmp) {
    out << "n,adiabatic_cost,ssmc_cost,ssmc_walkers,ssmc_timesteps,success_rate,"
           "ssmc_fit_residual\n";
    for (std::size_t i = 0; i < cmp.ssmc.size(); ++i) {
        const double adiabatic_cost =
            i < cmp.adiabatic.size() ? cmp.adiabatic[i].cost : 0.0;
        out << cmp.ssmc[i].n << ',' << format_double(adiabatic_cost) << ','
            << format_double(cmp.ssmc[i].cost) << ',' << cmp.ssmc[i].walkers << ','
            << cmp.ssmc_timesteps[i] << ','
            << format_double(cmp.ssmc[i].success_rate) << ','
            << format_double(cmp.ssmc_fit.residuals[i]) << '\n';
    }
}

std::string run_manifest_json(const ProblemConfig& config, std::uint64_t master_seed,
                              const std::string& command) {
    json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["master_seed"] = master_seed;
    doc["config"] = json::parse(config_to_json(config));
    return doc.dump();
}

}  // namespace stoq
