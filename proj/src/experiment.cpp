#include "oracle_recon/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "oracle_recon/oracle.hpp"
#include "oracle_recon/reconstruct.hpp"
#include "oracle_recon/util.hpp"
#include "oracle_recon/witness.hpp"

namespace oracle_recon {

double ExperimentConfig::derive_p(Vertex n) const {
    switch (density_mode) {
        case DensityMode::ExplicitP:
            return density_value;
        case DensityMode::LogFactor:
            return density_value * std::log(static_cast<double>(n)) / static_cast<double>(n);
        case DensityMode::Exponent:
            return std::pow(static_cast<double>(n), -density_value);
    }
    throw std::invalid_argument("experiment: unknown density mode");
}

void ExperimentConfig::validate() const {
    if (n_list.empty()) throw std::invalid_argument("experiment: n_list must be nonempty");
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (alpha_list.empty()) throw std::invalid_argument("experiment: alpha_list must be nonempty");
    for (double a : alpha_list)
        if (!(a > 0.0)) throw std::invalid_argument("experiment: alpha must be > 0");
    for (Vertex n : n_list) {
        if (n < 2) throw std::invalid_argument("experiment: n must be >= 2");
        const double p = derive_p(n);
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("experiment: derived p must be in (0,1]");
    }
    if (pairs < 1 && (mode == SweepMode::Witness || mode == SweepMode::Partition))
        throw std::invalid_argument("experiment: census modes need pairs >= 1");
}

void ExperimentRecord::validate() const {
    if (!exact) throw std::runtime_error("record: inexact reconstruction");
    if (pseudo_edges < true_edges)
        throw std::runtime_error("record: pseudo-edge count below true edge count");
    if (residual != pseudo_edges - true_edges)
        throw std::runtime_error("record: residual mismatch");
    const std::uint64_t all_pairs =
        static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1) / 2;
    if (queries_distinct_total > all_pairs)
        throw std::runtime_error("record: distinct queries exceed n choose 2");
    if (!(p > 0.0 && p <= 1.0)) throw std::runtime_error("record: p out of range");
}

const char* ExperimentRecord::csv_header() {
    return "trial_id,seed,n,p,c_or_gamma,delta_nominal,delta_realized,s,alpha,"
           "queries_phase1,queries_phase2,queries_distinct_total,pseudo_edges,"
           "true_edges,residual,exact,fallback_used,resamples,wall_ms";
}

std::string ExperimentRecord::csv_row() const {
    validate();
    std::ostringstream row;
    row << trial_id << ',' << seed << ',' << n << ',' << format_double(p) << ','
        << format_double(c_or_gamma) << ',' << format_double(delta_nominal) << ','
        << format_double(delta_realized) << ',' << s << ',' << format_double(alpha) << ','
        << queries_phase1 << ',' << queries_phase2 << ',' << queries_distinct_total << ','
        << pseudo_edges << ',' << true_edges << ',' << residual << ',' << (exact ? 1 : 0)
        << ',' << (fallback_used ? 1 : 0) << ',' << resamples << ','
        << format_double(wall_ms);
    return row.str();
}

namespace {

// Flushes rows to the sink in task order as soon as every predecessor is
// ready, whatever order workers finish in.
class OrderedWriter {
public:
    OrderedWriter(std::string header, std::ostream* file)
        : file_(file) {
        buffer_ = header + "\n";
        if (file_) (*file_) << buffer_ << std::flush;
    }

    void submit(std::size_t index, std::string row) {
        std::lock_guard<std::mutex> lock(mutex_);
        pending_[index] = std::move(row);
        while (!pending_.empty() && pending_.begin()->first == next_) {
            const std::string& line = pending_.begin()->second;
            buffer_ += line;
            buffer_ += '\n';
            if (file_) (*file_) << line << '\n' << std::flush;
            pending_.erase(pending_.begin());
            ++next_;
        }
    }

    std::string take() { return std::move(buffer_); }

private:
    std::mutex mutex_;
    std::map<std::size_t, std::string> pending_;
    std::size_t next_ = 0;
    std::string buffer_;
    std::ostream* file_;
};

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x51ed2701)));
}

GraphParams cell_params(const ExperimentConfig& cfg, Vertex n, std::uint64_t seed) {
    GraphParams params = GraphParams::with_p(n, cfg.derive_p(n), seed);
    params.require_connected = cfg.require_connected;
    params.max_resamples = cfg.max_resamples;
    return params;
}

double c_or_gamma_value(const ExperimentConfig& cfg) {
    return cfg.density_mode == DensityMode::ExplicitP ? 0.0 : cfg.density_value;
}

ExperimentRecord run_reconstruct_trial(const ExperimentConfig& cfg, std::uint64_t trial_id,
                                       Vertex n, double alpha, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const GraphParams params = cell_params(cfg, n, seed);
    GnpResult sample = gnp_generate(params);
    const std::uint64_t m = sample.graph.num_edges();
    const double delta_realized = sample.graph.average_degree();
    DistanceOracle oracle(std::move(sample.graph));

    std::mt19937_64 landmark_rng = derived_rng(seed, 0xa1);
    const LandmarkPlan plan = sample_landmarks(n, params.p, alpha, landmark_rng);
    const ReconstructionReport report = reconstruct(oracle, plan, 1);
    if (!report.exact) {
        std::ostringstream msg;
        msg << "sweep: inexact reconstruction (seed=" << seed << ", n=" << n
            << ", p=" << params.p << ", alpha=" << alpha << ")";
        throw std::runtime_error(msg.str());
    }

    ExperimentRecord record;
    record.trial_id = trial_id;
    record.seed = seed;
    record.n = n;
    record.p = params.p;
    record.c_or_gamma = c_or_gamma_value(cfg);
    record.delta_nominal = params.delta;
    record.delta_realized = delta_realized;
    record.s = report.s;
    record.alpha = alpha;
    record.queries_phase1 = report.queries_phase1;
    record.queries_phase2 = report.queries_phase2;
    record.queries_distinct_total = report.queries_distinct_total;
    record.pseudo_edges = report.pseudo_edge_count;
    record.true_edges = m;
    record.residual = report.pseudo_edge_count - m;
    record.exact = report.exact;
    record.fallback_used = report.fallback_used;
    record.resamples = sample.resamples;
    if (cfg.timings)
        record.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return record;
}

std::string census_prefix(const ExperimentConfig& cfg, std::uint64_t trial_id, Vertex n,
                          const GraphParams& params, const Graph& g, int resamples,
                          std::uint64_t seed) {
    std::ostringstream row;
    row << trial_id << ',' << seed << ',' << n << ',' << format_double(params.p) << ','
        << format_double(c_or_gamma_value(cfg)) << ',' << format_double(params.delta) << ','
        << format_double(g.average_degree()) << ',' << resamples;
    return row.str();
}

constexpr const char* kCensusPrefixHeader =
    "trial_id,seed,n,p,c_or_gamma,delta_nominal,delta_realized,resamples";

std::string run_witness_trial(const ExperimentConfig& cfg, std::uint64_t trial_id, Vertex n,
                              std::uint64_t seed) {
    const GraphParams params = cell_params(cfg, n, seed);
    GnpResult sample = gnp_generate(params);
    WitnessCensusOptions opts;
    opts.sample_pairs = cfg.pairs;
    opts.density_threshold = cfg.thresholds.witness_density;
    opts.keep_witness_lists = false;
    std::mt19937_64 rng = derived_rng(seed, 0xb2);
    const WitnessCensus census = witness_census(sample.graph, opts, rng);
    std::ostringstream row;
    row << census_prefix(cfg, trial_id, n, params, sample.graph, sample.resamples, seed) << ','
        << census.sampled_pairs << ',' << census.near_pairs << ',' << census.far_pairs << ','
        << format_double(census.fraction_far_at_threshold) << ','
        << format_double(census.far_ratio_p10) << ',' << format_double(census.far_ratio_median)
        << ',' << format_double(census.far_ratio_p90);
    return row.str();
}

std::string run_partition_trial(const ExperimentConfig& cfg, std::uint64_t trial_id, Vertex n,
                                std::uint64_t seed) {
    const GraphParams params = cell_params(cfg, n, seed);
    GnpResult sample = gnp_generate(params);
    const Graph& g = sample.graph;
    std::mt19937_64 rng = derived_rng(seed, 0xc3);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    std::vector<Edge> far_pairs;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000 + 400 * static_cast<std::uint64_t>(cfg.pairs);
    while (far_pairs.size() < cfg.pairs && ++attempts <= max_attempts) {
        Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        const DistanceVector du = bfs_distances(g, u);
        if (du.dist[static_cast<std::size_t>(v)] >= 3)
            far_pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (far_pairs.empty())
        throw std::runtime_error("sweep: no far pairs found (graph too dense for the regime)");
    const PartitionCensus census = partition_census(g, far_pairs, 0.0);
    std::ostringstream row;
    row << census_prefix(cfg, trial_id, n, params, g, sample.resamples, seed) << ','
        << far_pairs.size() << ',' << census.b_fractions.size() << ','
        << format_double(census.median_b_fraction) << ',' << census.excluded_small_layers << ','
        << census.clean_witness_violations << ',' << census.half_witness_violations;
    return row.str();
}

std::string run_concentration_trial(const ExperimentConfig& cfg, std::uint64_t trial_id,
                                    Vertex n, std::uint64_t seed) {
    GraphParams params = cell_params(cfg, n, seed);
    params.require_connected = false;
    const DegreeConcentrationReport report = degree_concentration_check(params, 1);
    std::ostringstream row;
    row << trial_id << ',' << seed << ',' << n << ',' << format_double(params.p) << ','
        << format_double(c_or_gamma_value(cfg)) << ',' << format_double(params.delta) << ','
        << format_double(report.out_of_band_fraction.front()) << ','
        << format_double(report.per_vertex_budget);
    return row.str();
}

std::string mode_header(SweepMode mode) {
    switch (mode) {
        case SweepMode::Reconstruct:
            return ExperimentRecord::csv_header();
        case SweepMode::Witness:
            return std::string(kCensusPrefixHeader) +
                   ",sampled_pairs,near_pairs,far_pairs,fraction_far_at_threshold,"
                   "far_ratio_p10,far_ratio_median,far_ratio_p90";
        case SweepMode::Partition:
            return std::string(kCensusPrefixHeader) +
                   ",far_pairs,included_layers,median_b_fraction,excluded_small_layers,"
                   "clean_witness_violations,half_witness_violations";
        case SweepMode::Concentration:
            return "trial_id,seed,n,p,c_or_gamma,delta_nominal,out_of_band_fraction,"
                   "per_vertex_budget";
    }
    return "";
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t cells =
        cfg.n_list.size() *
        (cfg.mode == SweepMode::Reconstruct ? cfg.alpha_list.size() : std::size_t{1});
    const std::size_t total = cells * static_cast<std::size_t>(cfg.trials);

    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path, std::ios::binary);  // LF line endings everywhere
        if (!file) throw std::runtime_error("sweep: cannot open output file " + cfg.out_path);
    }
    OrderedWriter writer(mode_header(cfg.mode), cfg.out_path.empty() ? nullptr : &file);

    SweepResult result;
    std::vector<ExperimentRecord> records(cfg.mode == SweepMode::Reconstruct ? total : 0);
    std::mutex record_mutex;

    parallel_for_index(total, cfg.threads, [&](std::size_t task) {
        const std::size_t cell = task / static_cast<std::size_t>(cfg.trials);
        const std::size_t trial = task % static_cast<std::size_t>(cfg.trials);
        const std::uint64_t seed = trial_seed(cfg.master_seed, cell, trial);
        std::string row;
        if (cfg.mode == SweepMode::Reconstruct) {
            const std::size_t i_n = cell / cfg.alpha_list.size();
            const std::size_t i_alpha = cell % cfg.alpha_list.size();
            ExperimentRecord record = run_reconstruct_trial(
                cfg, task, cfg.n_list[i_n], cfg.alpha_list[i_alpha], seed);
            row = record.csv_row();
            std::lock_guard<std::mutex> lock(record_mutex);
            records[task] = std::move(record);
        } else {
            const Vertex n = cfg.n_list[cell];
            switch (cfg.mode) {
                case SweepMode::Witness:
                    row = run_witness_trial(cfg, task, n, seed);
                    break;
                case SweepMode::Partition:
                    row = run_partition_trial(cfg, task, n, seed);
                    break;
                case SweepMode::Concentration:
                    row = run_concentration_trial(cfg, task, n, seed);
                    break;
                default:
                    break;
            }
        }
        writer.submit(task, std::move(row));
    });

    result.records = std::move(records);
    result.csv = writer.take();
    return result;
}

FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit: need at least 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit: x values are all equal");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r2 = 1.0;  // constant y, perfectly reproduced by slope 0
    } else {
        const double ss_res = syy - fit.slope * sxy;
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

double record_field(const ExperimentRecord& r, const std::string& name) {
    if (name == "n") return static_cast<double>(r.n);
    if (name == "p") return r.p;
    if (name == "c_or_gamma") return r.c_or_gamma;
    if (name == "delta_nominal") return r.delta_nominal;
    if (name == "delta_realized") return r.delta_realized;
    if (name == "s") return static_cast<double>(r.s);
    if (name == "alpha") return r.alpha;
    if (name == "queries_phase1") return static_cast<double>(r.queries_phase1);
    if (name == "queries_phase2") return static_cast<double>(r.queries_phase2);
    if (name == "queries_distinct_total") return static_cast<double>(r.queries_distinct_total);
    if (name == "pseudo_edges") return static_cast<double>(r.pseudo_edges);
    if (name == "true_edges") return static_cast<double>(r.true_edges);
    if (name == "residual") return static_cast<double>(r.residual);
    if (name == "wall_ms") return r.wall_ms;
    throw std::invalid_argument("record_field: unknown field " + name);
}

FitResult fit_scaling_exponent(std::span<const ExperimentRecord> records,
                               const std::string& x_field, const std::string& y_field) {
    std::map<double, std::pair<double, std::size_t>> cells;  // x -> (sum y, count)
    for (const auto& record : records) {
        const double x = record_field(record, x_field);
        const double y = record_field(record, y_field);
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_scaling_exponent: values must be positive");
        auto& cell = cells[x];
        cell.first += y;
        ++cell.second;
    }
    if (cells.size() < 3)
        throw std::invalid_argument("fit_scaling_exponent: need >= 3 distinct x values");
    std::vector<double> lx, ly;
    lx.reserve(cells.size());
    ly.reserve(cells.size());
    for (const auto& [x, acc] : cells) {
        lx.push_back(std::log(x));
        ly.push_back(std::log(acc.first / static_cast<double>(acc.second)));
    }
    return linear_fit(lx, ly);
}

}  // namespace oracle_recon
