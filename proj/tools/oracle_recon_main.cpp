// oracle-recon: simulate distance-query reconstruction of hidden G(n,p)
// graphs and run the witness/partition/concentration censuses from the
// command line. Subcommands: gen, reconstruct, witness-census,
// sphere-partition, profile-census, concentration-check, sweep.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "oracle_recon/experiment.hpp"
#include "oracle_recon/graph.hpp"
#include "oracle_recon/oracle.hpp"
#include "oracle_recon/plot.hpp"
#include "oracle_recon/reconstruct.hpp"
#include "oracle_recon/util.hpp"
#include "oracle_recon/witness.hpp"

namespace or_cli {

using json = nlohmann::json;
using namespace oracle_recon;

struct DensityOpts {
    double p = -1.0;
    double c = -1.0;
    double gamma = -1.0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--p", p, "edge probability p");
        cmd->add_option("--c", c, "log factor: p = c*ln(n)/n");
        cmd->add_option("--gamma", gamma, "exponent: p = n^(-gamma)");
    }

    int set_count() const { return (p >= 0) + (c >= 0) + (gamma >= 0); }

    DensityMode mode() const {
        if (p >= 0) return DensityMode::ExplicitP;
        if (c >= 0) return DensityMode::LogFactor;
        return DensityMode::Exponent;
    }

    double value() const {
        if (p >= 0) return p;
        if (c >= 0) return c;
        return gamma;
    }

    double resolve_p(Vertex n) const {
        if (set_count() != 1)
            throw std::invalid_argument("exactly one of --p, --c, --gamma is required");
        if (p >= 0) return p;
        if (c >= 0) return c * std::log(static_cast<double>(n)) / static_cast<double>(n);
        return std::pow(static_cast<double>(n), -gamma);
    }
};

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("ORACLE_RECON_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return cli_seed;
}

GraphParams build_params(Vertex n, const DensityOpts& density, std::uint64_t seed,
                         bool require_connected, int max_resamples) {
    GraphParams params = GraphParams::with_p(n, density.resolve_p(n), seed);
    params.require_connected = require_connected;
    params.max_resamples = max_resamples;
    return params;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

int run_gen(Vertex n, const DensityOpts& density, std::uint64_t seed, bool require_connected,
            int max_resamples, const std::string& out_path) {
    const GraphParams params = build_params(n, density, seed, require_connected, max_resamples);
    const GnpResult result = gnp_generate(params);
    std::ostringstream text;
    write_edge_list(result.graph, text);
    write_text(out_path, text.str());
    std::cerr << "generated n=" << n << " m=" << result.graph.num_edges()
              << " resamples=" << result.resamples << "\n";
    return 0;
}

json report_to_json(const ReconstructionReport& report, bool omit_edges) {
    json j;
    if (!omit_edges) {
        json edges = json::array();
        for (const auto& [u, v] : report.edges) edges.push_back({u, v});
        j["edges"] = std::move(edges);
    }
    j["edge_count"] = report.edges.size();
    j["exact"] = report.exact;
    j["s"] = report.s;
    j["alpha"] = report.alpha;
    j["pseudo_edge_count"] = report.pseudo_edge_count;
    j["queries_phase1"] = report.queries_phase1;
    j["queries_phase2"] = report.queries_phase2;
    j["queries_distinct_total"] = report.queries_distinct_total;
    j["fallback_used"] = report.fallback_used;
    j["wall_ms"] = report.wall_ms;
    return j;
}

int run_reconstruct(Vertex n, const DensityOpts& density, double alpha, std::uint64_t seed,
                    int threads, bool require_connected, int max_resamples,
                    const std::string& out_path, const std::string& format, bool omit_edges) {
    const GraphParams params = build_params(n, density, seed, require_connected, max_resamples);
    GnpResult sample = gnp_generate(params);
    const std::uint64_t m = sample.graph.num_edges();
    const double delta_realized = sample.graph.average_degree();
    DistanceOracle oracle(std::move(sample.graph));
    std::mt19937_64 rng(splitmix64(seed ^ 0xa1a1a1a1ULL));
    const LandmarkPlan plan = sample_landmarks(n, params.p, alpha, rng);
    const ReconstructionReport report = reconstruct(oracle, plan, threads);

    if (format == "csv") {
        ExperimentRecord record;
        record.trial_id = 0;
        record.seed = seed;
        record.n = n;
        record.p = params.p;
        record.c_or_gamma = density.p >= 0 ? 0.0 : density.value();
        record.delta_nominal = params.delta;
        record.delta_realized = delta_realized;
        record.s = report.s;
        record.alpha = report.alpha;
        record.queries_phase1 = report.queries_phase1;
        record.queries_phase2 = report.queries_phase2;
        record.queries_distinct_total = report.queries_distinct_total;
        record.pseudo_edges = report.pseudo_edge_count;
        record.true_edges = m;
        record.residual = report.pseudo_edge_count - m;
        record.exact = report.exact;
        record.fallback_used = report.fallback_used;
        record.resamples = sample.resamples;
        record.wall_ms = report.wall_ms;
        write_text(out_path, std::string(ExperimentRecord::csv_header()) + "\n" +
                                 record.csv_row() + "\n");
    } else {
        json j = report_to_json(report, omit_edges);
        j["n"] = n;
        j["p"] = params.p;
        j["seed"] = seed;
        j["true_edges"] = m;
        j["delta_nominal"] = params.delta;
        j["delta_realized"] = delta_realized;
        j["resamples"] = sample.resamples;
        write_text(out_path, j.dump(2) + "\n");
    }
    if (!report.exact) {
        std::cerr << "error: reconstruction inexact (seed=" << seed << ")\n";
        return 1;
    }
    std::cerr << "reconstructed n=" << n << " m=" << m << " s=" << report.s << " queries="
              << report.queries_distinct_total << (report.fallback_used ? " (fallback)" : "")
              << "\n";
    return 0;
}

int run_witness_census(Vertex n, const DensityOpts& density, std::uint64_t seed,
                       std::size_t pairs, std::size_t min_far, double threshold,
                       bool nominal_delta, bool exact, Vertex exact_max_n, int max_resamples,
                       const std::string& out_path, const std::string& format,
                       const std::string& plot_path) {
    const GraphParams params = build_params(n, density, seed, true, max_resamples);
    GnpResult sample = gnp_generate(params);

    WitnessCensus census;
    if (exact) {
        if (n > exact_max_n) {
            std::ostringstream msg;
            msg << "exact census gated to n <= " << exact_max_n << " (got n=" << n
                << "); use sampling or raise --exact-census-max-n";
            throw std::invalid_argument(msg.str());
        }
        census = witness_census_exact(sample.graph, threshold,
                                      nominal_delta ? params.delta : 0.0);
    } else {
        WitnessCensusOptions opts;
        opts.sample_pairs = pairs;
        opts.min_far_pairs = min_far;
        opts.density_threshold = threshold;
        opts.delta_override = nominal_delta ? params.delta : 0.0;
        opts.keep_witness_lists = false;
        std::mt19937_64 rng(splitmix64(seed ^ 0xb2b2b2b2ULL));
        census = witness_census(sample.graph, opts, rng);
    }

    if (format == "json") {
        json j;
        j["n"] = census.n;
        j["p"] = params.p;
        j["seed"] = seed;
        j["delta_used"] = census.delta_used;
        j["density_threshold"] = census.density_threshold;
        j["sampled_pairs"] = census.sampled_pairs;
        j["near_pairs"] = census.near_pairs;
        j["far_pairs"] = census.far_pairs;
        j["fraction_far_at_threshold"] = census.fraction_far_at_threshold;
        j["far_ratio_p10"] = census.far_ratio_p10;
        j["far_ratio_median"] = census.far_ratio_median;
        j["far_ratio_p90"] = census.far_ratio_p90;
        write_text(out_path, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "pair_id,u,v,dist_uv,witness_count,density_ratio\n";
        for (std::size_t i = 0; i < census.profiles.size(); ++i) {
            const auto& prof = census.profiles[i];
            csv << i << ',' << prof.u << ',' << prof.v << ',' << prof.dist_uv << ','
                << prof.count << ',' << format_double(prof.density_ratio) << '\n';
        }
        write_text(out_path, csv.str());
    }
    if (!plot_path.empty()) {
        std::vector<double> ratios;
        for (const auto& prof : census.profiles)
            if (prof.dist_uv >= 3) ratios.push_back(prof.density_ratio);
        PlotSpec spec;
        spec.title = "witness density (far pairs)";
        spec.x_label = "density_ratio";
        spec.y_label = "pairs";
        write_plot_file(plot_path, render_histogram_svg(spec, ratios, 30));
    }
    std::cerr << "witness census: " << census.sampled_pairs << " pairs, " << census.far_pairs
              << " far, fraction_at_threshold=" << census.fraction_far_at_threshold << "\n";
    return 0;
}

std::vector<Edge> sample_far_pairs(const Graph& g, std::size_t count, std::mt19937_64& rng) {
    std::uniform_int_distribution<Vertex> pick(0, g.num_vertices() - 1);
    std::vector<Edge> pairs;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000 + 400 * static_cast<std::uint64_t>(count);
    while (pairs.size() < count && ++attempts <= max_attempts) {
        Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        const DistanceVector du = bfs_distances(g, u);
        if (du.dist[static_cast<std::size_t>(v)] >= 3)
            pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (pairs.empty())
        throw std::runtime_error("no pairs at distance >= 3 found; graph too dense");
    return pairs;
}

int run_sphere_partition(Vertex n, const DensityOpts& density, std::uint64_t seed,
                         std::size_t pairs, bool nominal_delta, int max_resamples,
                         const std::string& out_path, const std::string& format) {
    const GraphParams params = build_params(n, density, seed, true, max_resamples);
    GnpResult sample = gnp_generate(params);
    std::mt19937_64 rng(splitmix64(seed ^ 0xc3c3c3c3ULL));
    const std::vector<Edge> far_pairs = sample_far_pairs(sample.graph, pairs, rng);
    const PartitionCensus census =
        partition_census(sample.graph, far_pairs, nominal_delta ? params.delta : 0.0);

    if (format == "json") {
        json j;
        j["n"] = n;
        j["p"] = params.p;
        j["seed"] = seed;
        j["delta_used"] = census.delta_used;
        j["pairs"] = far_pairs.size();
        j["included_layers"] = census.b_fractions.size();
        j["median_b_fraction"] = census.median_b_fraction;
        j["excluded_small_layers"] = census.excluded_small_layers;
        j["clean_witness_violations"] = census.clean_witness_violations;
        j["half_witness_violations"] = census.half_witness_violations;
        write_text(out_path, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "pair_id,k,layer_size,a_size,b_size,b1,b2,b3\n";
        for (const auto& row : census.rows)
            csv << row.pair_id << ',' << row.k << ',' << row.layer_size << ',' << row.a_size
                << ',' << row.b_size << ',' << row.b1 << ',' << row.b2 << ',' << row.b3 << '\n';
        write_text(out_path, csv.str());
    }
    std::cerr << "sphere partition: " << far_pairs.size() << " pairs, median |B_k|/|N^k|="
              << census.median_b_fraction << ", claim violations=" << census.clean_witness_violations
              << "\n";
    return 0;
}

int run_profile_census(Vertex n, const DensityOpts& density, std::uint64_t seed, Vertex u,
                       Vertex v, int max_resamples, const std::string& out_path,
                       const std::string& format) {
    const GraphParams params = build_params(n, density, seed, true, max_resamples);
    GnpResult sample = gnp_generate(params);
    if (u < 0 || v < 0) {
        std::mt19937_64 rng(splitmix64(seed ^ 0xd4d4d4d4ULL));
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        u = pick(rng);
        do {
            v = pick(rng);
        } while (v == u);
    }
    const ProfileCensus census = profile_census(sample.graph, u, v);
    if (format == "json") {
        json cells = json::array();
        for (const auto& [ij, count] : census.cells)
            cells.push_back({ij.first, ij.second, count});
        json j;
        j["n"] = n;
        j["u"] = census.u;
        j["v"] = census.v;
        j["dist_uv"] = census.dist_uv;
        j["cells"] = std::move(cells);
        write_text(out_path, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "i,j,count\n";
        for (const auto& [ij, count] : census.cells)
            csv << ij.first << ',' << ij.second << ',' << count << '\n';
        write_text(out_path, csv.str());
    }
    std::cerr << "profile census: pair (" << census.u << "," << census.v << ") d="
              << census.dist_uv << ", " << census.cells.size() << " cells\n";
    return 0;
}

int run_concentration(const std::string& kind, Vertex n, const DensityOpts& density,
                      double delta, int trials, std::uint64_t seed,
                      const std::string& out_path, const std::string& format) {
    if (kind == "degree") {
        const GraphParams params = build_params(n, density, seed, false, 0);
        const DegreeConcentrationReport report = degree_concentration_check(params, trials);
        if (format == "json") {
            json j;
            j["kind"] = "degree";
            j["n"] = report.n;
            j["p"] = report.p;
            j["delta"] = report.delta;
            j["per_vertex_budget"] = report.per_vertex_budget;
            j["trials"] = trials;
            j["mean_fraction"] = report.mean_fraction;
            j["max_fraction"] = report.max_fraction;
            write_text(out_path, j.dump(2) + "\n");
        } else {
            std::ostringstream csv;
            csv << "trial,out_of_band_fraction,per_vertex_budget\n";
            for (std::size_t t = 0; t < report.out_of_band_fraction.size(); ++t)
                csv << t << ',' << format_double(report.out_of_band_fraction[t]) << ','
                    << format_double(report.per_vertex_budget) << '\n';
            write_text(out_path, csv.str());
        }
        std::cerr << "degree concentration: mean_fraction=" << report.mean_fraction
                  << " budget=" << report.per_vertex_budget << "\n";
        return 0;
    }
    if (kind == "isolated") {
        if (delta <= 0) throw std::invalid_argument("--delta is required for --kind isolated");
        const IsolatedVertexReport report = isolated_vertex_check(n, delta, trials, seed);
        if (format == "json") {
            json j;
            j["kind"] = "isolated";
            j["n"] = report.n;
            j["delta"] = report.delta;
            j["p"] = report.p;
            j["threshold"] = report.threshold;
            j["failure_bound"] = report.failure_bound;
            j["trials"] = trials;
            j["exceed_count"] = report.exceed_count;
            j["max_non_isolated"] = report.max_non_isolated;
            write_text(out_path, j.dump(2) + "\n");
        } else {
            std::ostringstream csv;
            csv << "trial,non_isolated,threshold\n";
            for (std::size_t t = 0; t < report.non_isolated.size(); ++t)
                csv << t << ',' << report.non_isolated[t] << ','
                    << format_double(report.threshold) << '\n';
            write_text(out_path, csv.str());
        }
        std::cerr << "isolated check: exceed_count=" << report.exceed_count << "/" << trials
                  << " bound=" << report.failure_bound << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown --kind (expected degree or isolated)");
}

int run_sweep_cmd(const ExperimentConfig& cfg, const std::string& plot_path) {
    const SweepResult result = run_sweep(cfg);
    if (cfg.out_path.empty()) std::cout << result.csv;
    if (!plot_path.empty() && !result.records.empty()) {
        PlotSeries algo{"algorithm", {}, true};
        PlotSeries baseline{"n choose 2", {}, true};
        std::map<Vertex, std::pair<double, std::size_t>> by_n;
        for (const auto& record : result.records) {
            auto& cell = by_n[record.n];
            cell.first += static_cast<double>(record.queries_distinct_total);
            ++cell.second;
        }
        for (const auto& [n, acc] : by_n) {
            algo.points.emplace_back(static_cast<double>(n),
                                     acc.first / static_cast<double>(acc.second));
            baseline.points.emplace_back(
                static_cast<double>(n),
                static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0);
        }
        PlotSpec spec;
        spec.title = "distinct queries vs n";
        spec.x_label = "n";
        spec.y_label = "distinct queries";
        spec.log_x = true;
        spec.log_y = true;
        const PlotSeries series[] = {algo, baseline};
        write_plot_file(plot_path, render_scatter_svg(spec, series));
    }
    std::cerr << "sweep: wrote " << (cfg.mode == SweepMode::Reconstruct
                                         ? result.records.size()
                                         : static_cast<std::size_t>(cfg.trials) *
                                               cfg.n_list.size())
              << " records" << (cfg.out_path.empty() ? "" : " to " + cfg.out_path) << "\n";
    return 0;
}

}  // namespace or_cli

int main(int argc, char** argv) {
    using namespace or_cli;
    CLI::App app{"distance-query graph reconstruction simulator"};
    app.require_subcommand(1);

    // shared option storage
    Vertex n = 1024;
    or_cli::DensityOpts density;
    std::uint64_t seed = 1;
    double alpha = 3.0;
    int threads = 1;
    int trials = 10;
    std::string out_path;
    std::string format = "csv";
    std::string plot_path;
    bool require_connected = true;
    int max_resamples = 64;
    std::size_t pairs = 200;
    std::size_t min_far = 0;
    double threshold = 0.3;
    bool nominal_delta = false;
    bool exact_mode = false;
    Vertex exact_max_n = 2048;
    bool omit_edges = false;
    Vertex pair_u = -1, pair_v = -1;
    std::string kind = "degree";
    double iso_delta = -1.0;
    std::vector<Vertex> n_list;
    std::vector<double> alpha_list;
    std::string sweep_mode = "reconstruct";
    bool timings = false;

    auto add_common = [&](CLI::App* cmd, bool with_density = true) {
        cmd->add_option("--n", n, "vertex count");
        if (with_density) density.add_flags(cmd);
        cmd->add_option("--seed", seed, "RNG seed (ORACLE_RECON_SEED overrides)");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--max-resamples", max_resamples, "connectivity resample cap");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a G(n,p) edge list");
    add_common(gen);
    gen->add_option("--require-connected", require_connected,
                    "resample until connected (default true)");

    CLI::App* rec = app.add_subcommand("reconstruct", "run the two-phase reconstruction");
    add_common(rec);
    rec->add_option("--alpha", alpha, "landmark multiplier in s = alpha*Delta^2*ln n");
    rec->add_option("--threads", threads, "worker threads");
    rec->add_option("--format", format, "csv or json (default json here)");
    rec->add_flag("--omit-edges", omit_edges, "skip the edge array in JSON output");

    CLI::App* wit = app.add_subcommand("witness-census", "sample non-edges, count witnesses");
    add_common(wit);
    wit->add_option("--pairs", pairs, "non-adjacent pairs to sample");
    wit->add_option("--min-far", min_far, "keep sampling until this many far pairs");
    wit->add_option("--threshold", threshold, "density threshold in units of n/delta^2");
    wit->add_flag("--nominal-delta", nominal_delta, "use (n-1)p instead of realized 2m/n");
    wit->add_flag("--exact", exact_mode, "enumerate every non-adjacent pair");
    wit->add_option("--exact-census-max-n", exact_max_n, "size gate for --exact");
    wit->add_option("--format", format, "csv or json");
    wit->add_option("--plot", plot_path, "write a density-ratio histogram SVG");

    CLI::App* sph = app.add_subcommand("sphere-partition", "layered A_k/B_k decomposition");
    add_common(sph);
    sph->add_option("--pairs", pairs, "far pairs to sample");
    sph->add_flag("--nominal-delta", nominal_delta, "use (n-1)p instead of realized 2m/n");
    sph->add_option("--format", format, "csv or json");

    CLI::App* prof = app.add_subcommand("profile-census", "joint distance histogram of a pair");
    add_common(prof);
    prof->add_option("--u", pair_u, "first vertex (default: random)");
    prof->add_option("--v", pair_v, "second vertex (default: random)");
    prof->add_option("--format", format, "csv or json");

    CLI::App* conc = app.add_subcommand("concentration-check", "Monte-Carlo tail-bound checks");
    add_common(conc);
    conc->add_option("--kind", kind, "degree or isolated");
    conc->add_option("--trials", trials, "number of trials");
    conc->add_option("--delta", iso_delta, "target delta for --kind isolated");
    conc->add_option("--format", format, "csv or json");

    CLI::App* sweep = app.add_subcommand("sweep", "run a (n, alpha, trials) sweep to CSV");
    density.add_flags(sweep);
    sweep->add_option("--n", n_list, "vertex counts (repeatable)")->required();
    sweep->add_option("--alpha", alpha_list, "landmark multipliers (repeatable)");
    sweep->add_option("--trials", trials, "trials per cell");
    sweep->add_option("--seed", seed, "master seed (ORACLE_RECON_SEED overrides)");
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("--pairs", pairs, "pair sample for witness/partition modes");
    sweep->add_option("--mode", sweep_mode, "reconstruct|witness|partition|concentration");
    sweep->add_option("--out", out_path, "CSV path (default stdout)");
    sweep->add_option("--require-connected", require_connected, "resample until connected");
    sweep->add_option("--max-resamples", max_resamples, "connectivity resample cap");
    sweep->add_flag("--timings", timings, "record real wall_ms (breaks byte reproducibility)");
    sweep->add_option("--plot", plot_path, "write queries-vs-n SVG (reconstruct mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
    }

    seed = effective_seed(seed);

    try {
        if (gen->parsed())
            return run_gen(n, density, seed, require_connected, max_resamples, out_path);
        if (rec->parsed()) {
            if (!rec->count("--format")) format = "json";
            return run_reconstruct(n, density, alpha, seed, threads, require_connected,
                                   max_resamples, out_path, format, omit_edges);
        }
        if (wit->parsed())
            return run_witness_census(n, density, seed, pairs, min_far, threshold,
                                      nominal_delta, exact_mode, exact_max_n, max_resamples,
                                      out_path, format, plot_path);
        if (sph->parsed())
            return run_sphere_partition(n, density, seed, pairs, nominal_delta, max_resamples,
                                        out_path, format);
        if (prof->parsed())
            return run_profile_census(n, density, seed, pair_u, pair_v, max_resamples,
                                      out_path, format);
        if (conc->parsed())
            return run_concentration(kind, n, density, iso_delta, trials, seed, out_path,
                                     format);
        if (sweep->parsed()) {
            ExperimentConfig cfg;
            cfg.n_list = n_list;
            if (density.set_count() != 1)
                throw std::invalid_argument("exactly one of --p, --c, --gamma is required");
            cfg.density_mode = density.mode();
            cfg.density_value = density.value();
            if (!alpha_list.empty()) cfg.alpha_list = alpha_list;
            cfg.trials = trials;
            cfg.master_seed = seed;
            cfg.out_path = out_path;
            cfg.threads = threads;
            cfg.pairs = pairs;
            cfg.require_connected = require_connected;
            cfg.max_resamples = max_resamples;
            cfg.timings = timings;
            if (sweep_mode == "reconstruct")
                cfg.mode = SweepMode::Reconstruct;
            else if (sweep_mode == "witness")
                cfg.mode = SweepMode::Witness;
            else if (sweep_mode == "partition")
                cfg.mode = SweepMode::Partition;
            else if (sweep_mode == "concentration")
                cfg.mode = SweepMode::Concentration;
            else
                throw std::invalid_argument("unknown sweep mode " + sweep_mode);
            return run_sweep_cmd(cfg, plot_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
