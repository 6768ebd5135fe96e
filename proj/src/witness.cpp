#include "oracle_recon/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace oracle_recon {

namespace {

double resolve_delta(const Graph& g, double delta) {
    return delta > 0.0 ? delta : g.average_degree();
}

void require_connected(const Graph& g, const char* who) {
    if (!is_connected(g)) throw std::invalid_argument(std::string(who) + ": graph must be connected");
}

void require_pair(const Graph& g, Vertex u, Vertex v, const char* who) {
    const Vertex n = g.num_vertices();
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument(std::string(who) + ": vertex out of range");
    if (u == v) throw std::invalid_argument(std::string(who) + ": u and v must differ");
}

double quantile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

WitnessProfile profile_from_rows(const Graph& g, Vertex u, Vertex v, double delta,
                                 const std::vector<std::int32_t>& du,
                                 const std::vector<std::int32_t>& dv,
                                 bool keep_list) {
    WitnessProfile profile;
    profile.u = u;
    profile.v = v;
    profile.dist_uv = du[static_cast<std::size_t>(v)];
    const Vertex n = g.num_vertices();
    for (Vertex x = 0; x < n; ++x) {
        const std::int64_t a = du[static_cast<std::size_t>(x)];
        const std::int64_t b = dv[static_cast<std::size_t>(x)];
        const std::int64_t diff = a >= b ? a - b : b - a;
        if (diff >= 2) {
            ++profile.count;
            if (keep_list) profile.witnesses.push_back(x);
        }
    }
    const double scale = static_cast<double>(n) / (delta * delta);
    profile.density_ratio = scale > 0.0 ? static_cast<double>(profile.count) / scale : 0.0;
    return profile;
}

}  // namespace

WitnessProfile witness_set(const Graph& g, Vertex u, Vertex v, double delta) {
    require_pair(g, u, v, "witness_set");
    if (g.has_edge(u, v))
        throw std::invalid_argument("witness_set: witnesses are defined for non-edges only");
    require_connected(g, "witness_set");
    const DistanceVector du = bfs_distances(g, u);
    const DistanceVector dv = bfs_distances(g, v);
    return profile_from_rows(g, u, v, resolve_delta(g, delta), du.dist, dv.dist, true);
}

std::vector<Vertex> common_sphere(const Graph& g, Vertex u, Vertex v, int k) {
    require_pair(g, u, v, "common_sphere");
    require_connected(g, "common_sphere");
    const DistanceVector du = bfs_distances(g, u);
    const DistanceVector dv = bfs_distances(g, v);
    std::vector<Vertex> sphere;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        const std::int32_t m = std::min(du.dist[static_cast<std::size_t>(x)],
                                        dv.dist[static_cast<std::size_t>(x)]);
        if (m == k) sphere.push_back(x);
    }
    return sphere;
}

namespace {

// Builds the partition from precomputed distance rows; shared by the public
// entry point and the census loop.
SpherePartition partition_from_rows(const Graph& g, Vertex u, Vertex v, double delta,
                                    const std::vector<std::int32_t>& du,
                                    const std::vector<std::int32_t>& dv) {
    const Vertex n = g.num_vertices();
    SpherePartition part;
    part.u = u;
    part.v = v;
    part.dist_uv = du[static_cast<std::size_t>(v)];
    part.delta_used = delta;
    if (part.dist_uv <= 2)
        throw NearPairError("sphere_partition: near pair (d <= 2), not in the analysis regime");

    std::vector<std::int32_t> level(static_cast<std::size_t>(n));
    std::int32_t max_level = 0;
    for (Vertex x = 0; x < n; ++x) {
        level[static_cast<std::size_t>(x)] =
            std::min(du[static_cast<std::size_t>(x)], dv[static_cast<std::size_t>(x)]);
        max_level = std::max(max_level, level[static_cast<std::size_t>(x)]);
    }
    std::vector<std::vector<Vertex>> spheres(static_cast<std::size_t>(max_level) + 1);
    for (Vertex x = 0; x < n; ++x)
        spheres[static_cast<std::size_t>(level[static_cast<std::size_t>(x)])].push_back(x);

    // Per-vertex role in the previous layer: 0 none, 1 in A_{k-1}, 2 in B_{k-1}.
    std::vector<char> prev_role(static_cast<std::size_t>(n), 0);
    // A_{k-1} vertices with a neighbour inside their own layer (the set whose
    // neighbourhood forms the second contamination piece).
    std::vector<char> prev_intra(static_cast<std::size_t>(n), 0);

    part.layers.reserve(static_cast<std::size_t>(max_level));
    for (int k = 1; k <= max_level; ++k) {
        SphereLayer layer;
        layer.k = k;
        layer.sphere = spheres[static_cast<std::size_t>(k)];
        if (k == 1) {
            layer.a = layer.sphere;
        } else {
            for (Vertex x : layer.sphere) {
                bool in_b1 = false, in_b2 = false;
                int a_parents = 0;
                for (Vertex y : g.neighbors(x)) {
                    const char role = prev_role[static_cast<std::size_t>(y)];
                    if (role == 2) in_b1 = true;
                    if (role == 1) {
                        ++a_parents;
                        if (prev_intra[static_cast<std::size_t>(y)]) in_b2 = true;
                    }
                }
                const bool in_b3 = a_parents >= 2;
                if (in_b1) layer.b1.push_back(x);
                if (in_b2) layer.b2.push_back(x);
                if (in_b3) layer.b3.push_back(x);
                if (in_b1 || in_b2 || in_b3)
                    layer.b.push_back(x);
                else
                    layer.a.push_back(x);
            }
        }

        for (Vertex x : layer.sphere) prev_role[static_cast<std::size_t>(x)] = 0;
        for (Vertex x : layer.a) prev_role[static_cast<std::size_t>(x)] = 1;
        for (Vertex x : layer.b) prev_role[static_cast<std::size_t>(x)] = 2;
        for (Vertex x : layer.a) {
            char intra = 0;
            for (Vertex y : g.neighbors(x))
                if (level[static_cast<std::size_t>(y)] == k) {
                    intra = 1;
                    break;
                }
            prev_intra[static_cast<std::size_t>(x)] = intra;
        }
        // B_{k-1} vertices with intra-layer edges are already covered through
        // the first piece in the next round; only A-side sources matter here.

        part.layers.push_back(std::move(layer));
        // Reset roles of the layer before the previous one: only k-1 roles
        // must remain. Roles were just overwritten for layer k's vertices, and
        // older layers keep stale flags; clear them lazily below.
        if (k >= 2)
            for (Vertex x : spheres[static_cast<std::size_t>(k - 1)])
                prev_role[static_cast<std::size_t>(x)] = 0;
    }

    const double cap = static_cast<double>(n) / (delta * delta);
    part.ell = 0;
    for (int k = 1; k <= max_level; ++k) {
        const std::size_t prev_size =
            k == 1 ? 2 : spheres[static_cast<std::size_t>(k - 1)].size();
        if (static_cast<double>(prev_size) <= cap) part.ell = k;
    }
    return part;
}

}  // namespace

SpherePartition sphere_partition(const Graph& g, Vertex u, Vertex v, double delta) {
    require_pair(g, u, v, "sphere_partition");
    require_connected(g, "sphere_partition");
    const DistanceVector du = bfs_distances(g, u);
    const DistanceVector dv = bfs_distances(g, v);
    return partition_from_rows(g, u, v, resolve_delta(g, delta), du.dist, dv.dist);
}

ProfileCensus profile_census(const Graph& g, Vertex u, Vertex v) {
    require_pair(g, u, v, "profile_census");
    require_connected(g, "profile_census");
    const DistanceVector du = bfs_distances(g, u);
    const DistanceVector dv = bfs_distances(g, v);
    ProfileCensus census;
    census.u = u;
    census.v = v;
    census.dist_uv = du.dist[static_cast<std::size_t>(v)];
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> counts;
    for (Vertex x = 0; x < g.num_vertices(); ++x)
        ++counts[{du.dist[static_cast<std::size_t>(x)], dv.dist[static_cast<std::size_t>(x)]}];
    census.cells.assign(counts.begin(), counts.end());
    return census;
}

std::uint64_t near_pair_count(const Graph& g) {
    require_connected(g, "near_pair_count");
    const Vertex n = g.num_vertices();
    std::vector<std::int32_t> stamp(static_cast<std::size_t>(n), -1);
    std::uint64_t ordered = 0;
    for (Vertex v = 0; v < n; ++v) {
        std::uint64_t reach = 0;
        stamp[static_cast<std::size_t>(v)] = v;
        for (Vertex w : g.neighbors(v)) {
            if (stamp[static_cast<std::size_t>(w)] != v) {
                stamp[static_cast<std::size_t>(w)] = v;
                ++reach;
            }
            for (Vertex x : g.neighbors(w)) {
                if (stamp[static_cast<std::size_t>(x)] != v) {
                    stamp[static_cast<std::size_t>(x)] = v;
                    ++reach;
                }
            }
        }
        ordered += reach;
    }
    return ordered / 2;
}

double chernoff_tail(double delta, double mu, ChernoffForm form) {
    if (mu < 0.0) throw std::invalid_argument("chernoff_tail: mu must be >= 0");
    switch (form) {
        case ChernoffForm::TwoSided:
            if (!(delta > 0.0 && delta < 1.0))
                throw std::invalid_argument("chernoff_tail: two-sided form needs 0 < delta < 1");
            return 2.0 * std::exp(-delta * delta * mu / 3.0);
        case ChernoffForm::Upper:
            if (!(delta >= 0.0))
                throw std::invalid_argument("chernoff_tail: upper form needs delta >= 0");
            return std::exp(-delta * delta * mu / (2.0 + delta));
    }
    throw std::invalid_argument("chernoff_tail: unknown form");
}

DegreeConcentrationReport degree_concentration_check(const GraphParams& params, int trials) {
    if (trials < 1) throw std::invalid_argument("degree_concentration_check: trials must be >= 1");
    GraphParams local = params;
    local.require_connected = false;  // degree concentration is about the raw draw
    local.validate();
    if (local.delta < 1.0)
        throw std::invalid_argument("degree_concentration_check: needs p*(n-1) >= 1");

    DegreeConcentrationReport report;
    report.n = local.n;
    report.p = local.p;
    report.delta = local.delta;
    report.per_vertex_budget = 2.0 * std::exp(-local.delta / 12.0);
    const double lo = 0.5 * local.delta;
    const double hi = 1.5 * local.delta;
    report.out_of_band_fraction.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        GraphParams trial = local;
        trial.seed = params.seed + static_cast<std::uint64_t>(t);
        const Graph g = gnp_generate(trial).graph;
        std::size_t out = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            const double d = static_cast<double>(g.degree(v));
            if (d < lo || d > hi) ++out;
        }
        report.out_of_band_fraction.push_back(static_cast<double>(out) /
                                              static_cast<double>(g.num_vertices()));
    }
    double sum = 0.0;
    for (double f : report.out_of_band_fraction) {
        sum += f;
        report.max_fraction = std::max(report.max_fraction, f);
    }
    report.mean_fraction = sum / static_cast<double>(trials);
    return report;
}

IsolatedVertexReport isolated_vertex_check(Vertex n, double delta, int trials,
                                           std::uint64_t seed) {
    if (n < 1 || delta <= 0.0)
        throw std::invalid_argument("isolated_vertex_check: need n >= 1 and delta > 0");
    if (trials < 1) throw std::invalid_argument("isolated_vertex_check: trials must be >= 1");
    const double p = 1.0 / (static_cast<double>(n) * delta);
    if (p > 1.0) throw std::invalid_argument("isolated_vertex_check: 1/(n*delta) exceeds 1");

    IsolatedVertexReport report;
    report.n = n;
    report.delta = delta;
    report.p = p;
    report.threshold = 4.0 * static_cast<double>(n) / delta;
    report.failure_bound = 2.0 * std::exp(-static_cast<double>(n) / (3.0 * delta));
    report.non_isolated.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        GraphParams params = GraphParams::with_p(n, p, seed + static_cast<std::uint64_t>(t));
        params.require_connected = false;
        const Graph g = gnp_generate(params).graph;
        int live = 0;
        for (Vertex v = 0; v < n; ++v)
            if (g.degree(v) > 0) ++live;
        report.non_isolated.push_back(live);
        report.max_non_isolated = std::max(report.max_non_isolated, live);
        if (static_cast<double>(live) > report.threshold) ++report.exceed_count;
    }
    return report;
}

namespace {

WitnessCensus census_aggregate(const Graph& g, double delta, double threshold,
                               std::vector<WitnessProfile> profiles,
                               std::size_t sampled, std::size_t near) {
    WitnessCensus census;
    census.n = g.num_vertices();
    census.delta_used = delta;
    census.density_threshold = threshold;
    census.sampled_pairs = sampled;
    census.near_pairs = near;
    census.far_pairs = sampled - near;
    census.profiles = std::move(profiles);
    std::vector<double> far_ratios;
    std::size_t far_hits = 0;
    for (const auto& prof : census.profiles) {
        if (prof.dist_uv >= 3) {
            far_ratios.push_back(prof.density_ratio);
            if (prof.density_ratio >= threshold) ++far_hits;
        }
    }
    std::sort(far_ratios.begin(), far_ratios.end());
    if (!far_ratios.empty()) {
        census.fraction_far_at_threshold =
            static_cast<double>(far_hits) / static_cast<double>(far_ratios.size());
        census.far_ratio_p10 = quantile(far_ratios, 0.10);
        census.far_ratio_median = quantile(far_ratios, 0.50);
        census.far_ratio_p90 = quantile(far_ratios, 0.90);
    }
    return census;
}

}  // namespace

WitnessCensus witness_census(const Graph& g, const WitnessCensusOptions& opts,
                             std::mt19937_64& rng) {
    if (opts.sample_pairs == 0 && opts.min_far_pairs == 0)
        throw std::invalid_argument("witness_census: empty sample request");
    require_connected(g, "witness_census");
    const Vertex n = g.num_vertices();
    if (n < 2) throw std::invalid_argument("witness_census: need n >= 2");
    const double delta = resolve_delta(g, opts.delta_override);

    std::unordered_set<std::uint64_t> seen;
    std::vector<WitnessProfile> profiles;
    std::size_t sampled = 0, near = 0, far = 0;
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    // A connected graph on >= 2 vertices has a non-edge unless complete;
    // complete graphs simply exhaust the attempt budget below.
    const std::uint64_t max_attempts =
        1000 + 200 * static_cast<std::uint64_t>(std::max(opts.sample_pairs, opts.min_far_pairs));
    std::uint64_t attempts = 0;
    while (sampled < opts.sample_pairs || far < opts.min_far_pairs) {
        if (++attempts > max_attempts)
            throw std::runtime_error(
                "witness_census: sampling stalled (too few non-edges or far pairs)");
        Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        if (u > v) std::swap(u, v);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
        if (!seen.insert(key).second) continue;
        const DistanceVector du = bfs_distances(g, u);
        const DistanceVector dv = bfs_distances(g, v);
        WitnessProfile prof =
            profile_from_rows(g, u, v, delta, du.dist, dv.dist, opts.keep_witness_lists);
        ++sampled;
        if (prof.dist_uv <= 2)
            ++near;
        else
            ++far;
        profiles.push_back(std::move(prof));
    }
    return census_aggregate(g, delta, opts.density_threshold, std::move(profiles), sampled, near);
}

WitnessCensus witness_census_exact(const Graph& g, double density_threshold,
                                   double delta_override) {
    require_connected(g, "witness_census_exact");
    const Vertex n = g.num_vertices();
    const double delta = resolve_delta(g, delta_override);
    std::vector<DistanceVector> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) rows.push_back(bfs_distances(g, v));
    std::vector<WitnessProfile> profiles;
    std::size_t sampled = 0, near = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (g.has_edge(u, v)) continue;
            WitnessProfile prof = profile_from_rows(
                g, u, v, delta, rows[static_cast<std::size_t>(u)].dist,
                rows[static_cast<std::size_t>(v)].dist, /*keep_list=*/false);
            ++sampled;
            if (prof.dist_uv <= 2) ++near;
            profiles.push_back(std::move(prof));
        }
    return census_aggregate(g, delta, density_threshold, std::move(profiles), sampled, near);
}

PartitionCensus partition_census(const Graph& g, std::span<const Edge> pairs, double delta,
                                 std::size_t min_layer_size) {
    if (pairs.empty()) throw std::invalid_argument("partition_census: empty pair sample");
    require_connected(g, "partition_census");
    const double d_used = resolve_delta(g, delta);

    PartitionCensus census;
    census.delta_used = d_used;
    census.min_layer_size = min_layer_size;

    std::vector<char> in_layer(static_cast<std::size_t>(g.num_vertices()), 0);
    for (std::size_t id = 0; id < pairs.size(); ++id) {
        const auto [u, v] = pairs[id];
        const DistanceVector du = bfs_distances(g, u);
        const DistanceVector dv = bfs_distances(g, v);
        const SpherePartition part = partition_from_rows(g, u, v, d_used, du.dist, dv.dist);

        for (const SphereLayer& layer : part.layers) {
            census.rows.push_back({id, u, v, layer.k, layer.sphere.size(), layer.a.size(),
                                   layer.b.size(), layer.b1.size(), layer.b2.size(),
                                   layer.b3.size()});
            if (layer.sphere.size() >= min_layer_size)
                census.b_fractions.push_back(static_cast<double>(layer.b.size()) /
                                             static_cast<double>(layer.sphere.size()));
            else
                ++census.excluded_small_layers;

            // Deterministic witness criterion: a clean vertex with no
            // neighbour inside its own sphere must be a witness.
            for (Vertex x : layer.sphere) in_layer[static_cast<std::size_t>(x)] = 1;
            for (Vertex x : layer.a) {
                bool intra = false;
                for (Vertex y : g.neighbors(x))
                    if (in_layer[static_cast<std::size_t>(y)]) {
                        intra = true;
                        break;
                    }
                if (!intra) {
                    const std::int64_t a = du.dist[static_cast<std::size_t>(x)];
                    const std::int64_t b = dv.dist[static_cast<std::size_t>(x)];
                    if (std::llabs(a - b) < 2) ++census.clean_witness_violations;
                }
            }
            for (Vertex x : layer.sphere) in_layer[static_cast<std::size_t>(x)] = 0;
        }

        if (part.ell >= 1 && static_cast<std::size_t>(part.ell) <= part.layers.size()) {
            const SphereLayer& horizon = part.layers[static_cast<std::size_t>(part.ell - 1)];
            if (!horizon.a.empty()) {
                std::size_t hits = 0;
                for (Vertex x : horizon.a) {
                    const std::int64_t a = du.dist[static_cast<std::size_t>(x)];
                    const std::int64_t b = dv.dist[static_cast<std::size_t>(x)];
                    if (std::llabs(a - b) >= 2) ++hits;
                }
                const double frac =
                    static_cast<double>(hits) / static_cast<double>(horizon.a.size());
                census.horizon_witness_fraction.push_back(frac);
                if (horizon.a.size() >= min_layer_size && frac < 0.5)
                    ++census.half_witness_violations;
            }
        }
    }

    std::vector<double> sorted = census.b_fractions;
    std::sort(sorted.begin(), sorted.end());
    census.median_b_fraction = quantile(sorted, 0.5);
    return census;
}

}  // namespace oracle_recon
