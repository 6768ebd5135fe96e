#ifndef ORACLE_RECON_EXPERIMENT_HPP
#define ORACLE_RECON_EXPERIMENT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oracle_recon/graph.hpp"

namespace oracle_recon {

enum class DensityMode {
    ExplicitP,  // p given directly
    LogFactor,  // p = c * ln(n) / n
    Exponent,   // p = n^(-gamma); gamma in (1/2, 1) is the regime of interest
};

enum class SweepMode { Reconstruct, Witness, Partition, Concentration };

struct ExperimentThresholds {
    double witness_density = 0.3;   // in units of n/delta^2
    double witness_fraction = 0.95;
};

struct ExperimentConfig {
    std::vector<Vertex> n_list;
    DensityMode density_mode = DensityMode::LogFactor;
    double density_value = 4.0;  // p, c, or gamma depending on the mode
    std::vector<double> alpha_list{3.0};
    int trials = 1;
    std::uint64_t master_seed = 1;
    ExperimentThresholds thresholds;
    std::string out_path;  // empty: no file, CSV still returned
    SweepMode mode = SweepMode::Reconstruct;
    int threads = 1;
    std::size_t pairs = 200;  // per-trial pair sample for witness/partition modes
    bool require_connected = true;
    int max_resamples = 64;
    // Real per-trial wall clock breaks byte-level reproducibility across
    // runs, so the wall_ms column is 0 unless explicitly requested.
    bool timings = false;

    double derive_p(Vertex n) const;
    void validate() const;  // throws std::invalid_argument
};

/// One CSV row of a reconstruct-mode sweep. Self-validates on write.
struct ExperimentRecord {
    std::uint64_t trial_id = 0;
    std::uint64_t seed = 0;
    Vertex n = 0;
    double p = 0.0;
    double c_or_gamma = 0.0;  // 0 when p was given explicitly
    double delta_nominal = 0.0;
    double delta_realized = 0.0;
    std::size_t s = 0;
    double alpha = 0.0;
    std::uint64_t queries_phase1 = 0;
    std::uint64_t queries_phase2 = 0;
    std::uint64_t queries_distinct_total = 0;
    std::uint64_t pseudo_edges = 0;
    std::uint64_t true_edges = 0;
    std::uint64_t residual = 0;
    bool exact = false;
    bool fallback_used = false;
    int resamples = 0;
    double wall_ms = 0.0;

    void validate() const;  // throws std::runtime_error on violated invariants
    static const char* csv_header();
    std::string csv_row() const;
};

struct SweepResult {
    std::vector<ExperimentRecord> records;  // reconstruct mode only
    std::string csv;                        // full file contents, any mode
};

// Runs one record per (cell x trial) where cells are n_list x alpha_list
// (n_list alone for the census modes). Deterministic from master_seed: trial
// seeds derive from (master, cell, trial), workers write into per-task slots,
// and rows are flushed to cfg.out_path in task order as soon as their
// predecessors are done. Any inexact reconstruction aborts with the offending
// seed in the message: correctness is unconditional, so that is a bug signal.
SweepResult run_sweep(const ExperimentConfig& cfg);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares of y on x. Throws on size mismatch or < 2 points.
FitResult linear_fit(std::span<const double> x, std::span<const double> y);

// Least-squares slope of ln(cell mean of y_field) against ln(x_field), over
// cells grouped by distinct x values. Needs >= 3 distinct positive x values
// and positive cell means.
FitResult fit_scaling_exponent(std::span<const ExperimentRecord> records,
                               const std::string& x_field, const std::string& y_field);

// Numeric field accessor used by the fitter and the CLI.
double record_field(const ExperimentRecord& record, const std::string& name);

}  // namespace oracle_recon

#endif
