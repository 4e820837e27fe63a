#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stoqbench/gap.hpp"
#include "stoqbench/harness.hpp"
#include "stoqbench/model.hpp"
#include "stoqbench/ssmc.hpp"

namespace stoq {

/// Full-precision float formatting ("%.17g"); every number in CSV/JSON output
/// goes through this so identical runs produce identical bytes.
std::string format_double(double value);

/// Problem + schedule configuration document. JSON keys are fixed for
/// cross-tool reproducibility:
///   problem ("double_well" | "spike"), n, omega, delta, tau, alpha,
///   schedule { total_steps, dt }.
/// omega/delta/tau appear for double_well, alpha for spike; a double_well
/// config with only n gets the default scaling laws.
struct ProblemConfig {
    ProblemInstance instance = ProblemInstance::free_field(1);
    Schedule schedule{2000, 0.0};  // dt = 0 means "engine default"
    bool has_schedule = false;
};

ProblemConfig config_from_json(const std::string& text);
ProblemConfig config_from_file(const std::string& path);
std::string config_to_json(const ProblemConfig& config);

std::string trial_record_to_json(const TrialRecord& record);

/// Snapshot CSV: header "step,s,w,count", one row per (snapshot, weight).
void write_snapshot_csv(std::ostream& out, const TrialRecord& record);

/// Gap curve CSV: header "s,gamma".
void write_gap_curve_csv(std::ostream& out, const GapCurve& curve);

/// Quantum cost CSV: header "n,s_star,gamma_min,cost".
void write_quantum_cost_csv(std::ostream& out, const QuantumCostSeries& series);

/// SSMC series summary CSV: header "n,mean_cost,std,walkers,success_rate".
void write_cost_summary_csv(std::ostream& out, const SsmcSeries& series);

/// Distribution CSV: header "w,d".
void write_distribution_csv(std::ostream& out, const HammingDistribution& dist);

/// Spike comparison CSV:
/// header "n,adiabatic_cost,ssmc_cost,ssmc_walkers,ssmc_timesteps,success_rate,ssmc_fit_residual".
void write_spike_comparison_csv(std::ostream& out, const SpikeComparison& cmp);

/// Run manifest: config + master seed + code version, for reproducing any
/// output byte-for-byte. Deliberately carries no timestamps.
std::string run_manifest_json(const ProblemConfig& config, std::uint64_t master_seed,
                              const std::string& command);

extern const char* const kVersion;

}  // namespace stoq
