#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracle_recon/graph.hpp"
#include "oracle_recon/oracle.hpp"
#include "oracle_recon/witness.hpp"

using namespace oracle_recon;

namespace {

Graph random_connected(Vertex n, double c, std::uint64_t seed) {
    GraphParams params = GraphParams::with_c(n, c, seed);
    params.max_resamples = 200;
    return gnp_generate(params).graph;
}

// Independent set-based recomputation of the layered partition, straight from
// the defining equations.
struct NaiveLayers {
    std::vector<std::set<Vertex>> sphere, a, b;
};

NaiveLayers naive_partition(const Graph& g, Vertex u, Vertex v) {
    const auto du = bfs_distances(g, u).dist;
    const auto dv = bfs_distances(g, v).dist;
    const Vertex n = g.num_vertices();
    std::int32_t max_k = 0;
    std::vector<std::int32_t> level(static_cast<std::size_t>(n));
    for (Vertex x = 0; x < n; ++x) {
        level[static_cast<std::size_t>(x)] =
            std::min(du[static_cast<std::size_t>(x)], dv[static_cast<std::size_t>(x)]);
        max_k = std::max(max_k, level[static_cast<std::size_t>(x)]);
    }
    NaiveLayers out;
    out.sphere.resize(static_cast<std::size_t>(max_k) + 1);
    out.a.resize(out.sphere.size());
    out.b.resize(out.sphere.size());
    for (Vertex x = 0; x < n; ++x)
        out.sphere[static_cast<std::size_t>(level[static_cast<std::size_t>(x)])].insert(x);

    for (std::size_t k = 1; k < out.sphere.size(); ++k) {
        if (k == 1) {
            out.a[1] = out.sphere[1];
            continue;
        }
        std::set<Vertex> b1, b2, b3, d_set;
        for (Vertex y : out.b[k - 1])
            for (Vertex x : g.neighbors(y))
                if (out.sphere[k].count(x)) b1.insert(x);
        for (Vertex y : out.a[k - 1])
            for (Vertex z : g.neighbors(y))
                if (out.sphere[k - 1].count(z)) d_set.insert(y);
        for (Vertex y : d_set)
            for (Vertex x : g.neighbors(y))
                if (out.sphere[k].count(x)) b2.insert(x);
        for (Vertex x : out.sphere[k]) {
            int parents = 0;
            for (Vertex y : g.neighbors(x))
                if (out.a[k - 1].count(y)) ++parents;
            if (parents >= 2) b3.insert(x);
        }
        for (Vertex x : out.sphere[k]) {
            if (b1.count(x) || b2.count(x) || b3.count(x))
                out.b[k].insert(x);
            else
                out.a[k].insert(x);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("witness_set on the fixtures") {
    // P5 pair (0,3): distance rows [0,1,2,3,4] vs [3,2,1,0,1]
    const WitnessProfile p5 = witness_set(path_graph(5), 0, 3);
    CHECK(p5.witnesses == std::vector<Vertex>{0, 3, 4});
    CHECK(p5.count == 3);
    CHECK(p5.dist_uv == 3);

    const WitnessProfile c4 = witness_set(cycle_graph(4), 0, 2);
    CHECK(c4.witnesses == std::vector<Vertex>{0, 2});

    // K4 minus {0,1}: only the endpoints see the gap
    const Graph dented = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const WitnessProfile k4m = witness_set(dented, 0, 1);
    CHECK(k4m.witnesses == std::vector<Vertex>{0, 1});

    CHECK_THROWS_AS(witness_set(path_graph(5), 0, 1), std::invalid_argument);
}

TEST_CASE("witness density ratio uses n/delta^2 units") {
    const Graph p5 = path_graph(5);
    // realized delta = 2m/n = 8/5
    const WitnessProfile prof = witness_set(p5, 0, 3);
    const double delta = 8.0 / 5.0;
    CHECK(prof.density_ratio == doctest::Approx(3.0 / (5.0 / (delta * delta))));
    const WitnessProfile nominal = witness_set(p5, 0, 3, 2.0);
    CHECK(nominal.density_ratio == doctest::Approx(3.0 / (5.0 / 4.0)));
}

TEST_CASE("witness soundness: re-query through an oracle") {
    const Graph g = random_connected(128, 3.0, 71);
    DistanceOracle oracle{Graph(g)};
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Vertex> pick(0, g.num_vertices() - 1);
    int checked = 0;
    while (checked < 10) {
        const Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        ++checked;
        const WitnessProfile prof = witness_set(g, u, v);
        for (Vertex x : prof.witnesses) {
            const std::int32_t xu = oracle.query(x, u, "check");
            const std::int32_t xv = oracle.query(x, v, "check");
            CHECK(std::abs(xu - xv) >= 2);
        }
    }
}

TEST_CASE("common_sphere") {
    const Graph p5 = path_graph(5);
    CHECK(common_sphere(p5, 0, 4, 1) == std::vector<Vertex>{1, 3});
    CHECK(common_sphere(p5, 0, 4, 2) == std::vector<Vertex>{2});
    CHECK(common_sphere(p5, 0, 4, 0) == std::vector<Vertex>{0, 4});

    // spheres partition V on connected graphs
    const Graph g = random_connected(64, 3.0, 73);
    std::size_t total = 0;
    for (int k = 0; k <= 32; ++k) total += common_sphere(g, 3, 17, k).size();
    CHECK(total == 64);
}

TEST_CASE("sphere_partition on P5 (0,4)") {
    const SpherePartition part = sphere_partition(path_graph(5), 0, 4, 1.0);
    REQUIRE(part.layers.size() == 2);
    CHECK(part.layers[0].a == std::vector<Vertex>{1, 3});
    CHECK(part.layers[0].b.empty());
    CHECK(part.layers[1].b == std::vector<Vertex>{2});  // two parents in A_1
    CHECK(part.layers[1].b3 == std::vector<Vertex>{2});
    CHECK(part.layers[1].b1.empty());
    CHECK(part.layers[1].b2.empty());
    CHECK(part.layers[1].a.empty());
    // delta = 1: every layer satisfies |N^{k-1}| <= n, so ell is the top layer
    CHECK(part.ell == 2);
}

TEST_CASE("sphere_partition pendant example") {
    // path 0-1-2-3 plus pendant 4 attached to 1; pair (0,3)
    const Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}});
    const SpherePartition part = sphere_partition(g, 0, 3);
    REQUIRE(part.layers.size() == 2);
    CHECK(part.layers[0].a == std::vector<Vertex>{1, 2});
    // 1 and 2 are adjacent inside layer 1, so the pendant is contaminated
    CHECK(part.layers[1].b == std::vector<Vertex>{4});
    CHECK(part.layers[1].b2 == std::vector<Vertex>{4});
    CHECK(part.layers[1].b3.empty());
    CHECK(part.layers[1].a.empty());
}

TEST_CASE("sphere_partition rejects near pairs distinctly") {
    CHECK_THROWS_AS(sphere_partition(path_graph(5), 0, 2, 1.0), NearPairError);
    CHECK_THROWS_AS(sphere_partition(cycle_graph(4), 0, 2, 1.0), NearPairError);
}

TEST_CASE("partition matches the set-based recomputation") {
    std::mt19937_64 seeds(79);
    int done = 0;
    while (done < 15) {
        const Vertex n = 96 + static_cast<Vertex>(seeds() % 64);
        const Graph g = random_connected(n, 1.5, seeds());
        std::mt19937_64 rng(seeds());
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        const Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        if (bfs_distances(g, u).dist[static_cast<std::size_t>(v)] < 3) continue;
        ++done;

        const SpherePartition part = sphere_partition(g, u, v);
        const NaiveLayers naive = naive_partition(g, u, v);
        REQUIRE(part.layers.size() + 1 == naive.sphere.size());
        for (const SphereLayer& layer : part.layers) {
            const std::size_t k = static_cast<std::size_t>(layer.k);
            CHECK(std::set<Vertex>(layer.sphere.begin(), layer.sphere.end()) == naive.sphere[k]);
            CHECK(std::set<Vertex>(layer.a.begin(), layer.a.end()) == naive.a[k]);
            CHECK(std::set<Vertex>(layer.b.begin(), layer.b.end()) == naive.b[k]);
            // A and B partition the sphere
            CHECK(layer.a.size() + layer.b.size() == layer.sphere.size());
        }
    }
}

TEST_CASE("partition census flags nothing on clean far pairs") {
    std::mt19937_64 seeds(83);
    const Graph g = random_connected(512, 2.0, seeds());
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Vertex> pick(0, g.num_vertices() - 1);
    std::vector<Edge> pairs;
    while (pairs.size() < 20) {
        const Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        if (bfs_distances(g, u).dist[static_cast<std::size_t>(v)] < 3) continue;
        pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    const PartitionCensus census = partition_census(g, pairs, 0.0);
    CHECK(census.clean_witness_violations == 0);
    CHECK(census.rows.size() > pairs.size());  // several layers per pair
    CHECK_THROWS_AS(partition_census(g, {}, 0.0), std::invalid_argument);
}

TEST_CASE("odd-distance path pairs keep every layer clean") {
    // With d(u,v) odd the two BFS fronts meet across the middle edge, which
    // lies inside the top layer: no vertex gains two clean parents and no
    // intra-layer edge has children to contaminate.
    for (Vertex n : {6, 8, 12}) {
        const SpherePartition part = sphere_partition(path_graph(n), 0, n - 1, 1.0);
        for (const SphereLayer& layer : part.layers) {
            CHECK(layer.b.empty());
            CHECK(layer.a == layer.sphere);
        }
    }
}

TEST_CASE("degenerate small layers are excluded from aggregates") {
    // P5 pair (0,4): both layers have fewer than 8 vertices, so nothing
    // enters the fraction aggregate even though |B_2|/|N^2| = 1 there.
    const Graph p5 = path_graph(5);
    const std::vector<Edge> pairs = {{0, 4}};
    const PartitionCensus census = partition_census(p5, pairs, 1.0);
    CHECK(census.b_fractions.empty());
    CHECK(census.excluded_small_layers == 2);
    CHECK(census.median_b_fraction == 0.0);
    REQUIRE(census.rows.size() == 2);
    CHECK(census.rows[1].b_size == census.rows[1].layer_size);  // the degenerate case itself
}

TEST_CASE("horizon-layer contamination stays below one half at scale") {
    // 100 far pairs in G(8192, 4 ln n / n): the median |B_ell|/|N^ell| over
    // pairs sits well under 1/2 (the horizon layer is usually the first, which
    // is clean by construction).
    const Graph g = random_connected(8192, 4.0, 107);
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<Vertex> pick(0, g.num_vertices() - 1);
    std::vector<double> horizon_fractions;
    while (horizon_fractions.size() < 100) {
        const Vertex u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        SpherePartition part;
        try {
            part = sphere_partition(g, u, v);
        } catch (const NearPairError&) {
            continue;
        }
        if (part.ell < 1 || static_cast<std::size_t>(part.ell) > part.layers.size()) continue;
        const SphereLayer& layer = part.layers[static_cast<std::size_t>(part.ell - 1)];
        if (layer.sphere.empty()) continue;
        horizon_fractions.push_back(static_cast<double>(layer.b.size()) /
                                    static_cast<double>(layer.sphere.size()));
    }
    std::nth_element(horizon_fractions.begin(),
                     horizon_fractions.begin() + horizon_fractions.size() / 2,
                     horizon_fractions.end());
    CHECK(horizon_fractions[horizon_fractions.size() / 2] < 0.5);
}

TEST_CASE("profile census on P4") {
    const ProfileCensus census = profile_census(path_graph(4), 0, 3);
    REQUIRE(census.cells.size() == 4);
    using Cell = std::pair<std::pair<std::int32_t, std::int32_t>, std::int64_t>;
    CHECK(census.cells == std::vector<Cell>{{{0, 3}, 1}, {{1, 2}, 1}, {{2, 1}, 1}, {{3, 0}, 1}});
}

TEST_CASE("profile census invariants on random graphs") {
    std::mt19937_64 seeds(89);
    for (int t = 0; t < 10; ++t) {
        const Vertex n = 32 + static_cast<Vertex>(seeds() % 97);
        const Graph g = random_connected(n, 2.5, seeds());
        std::mt19937_64 rng(seeds());
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        Vertex u = pick(rng), v = pick(rng);
        if (u == v) v = (u + 1) % n;
        const ProfileCensus census = profile_census(g, u, v);

        std::int64_t total = 0;
        std::map<std::int32_t, std::int64_t> row_sums, col_sums;
        for (const auto& [ij, count] : census.cells) {
            total += count;
            row_sums[ij.first] += count;
            col_sums[ij.second] += count;
            CHECK(std::abs(ij.first - ij.second) <= census.dist_uv);
            CHECK(ij.first + ij.second >= census.dist_uv);
            if (ij.first == 1 && ij.second == 1) CHECK(census.dist_uv <= 2);
            if (ij.first == 0) {
                CHECK(ij.second == census.dist_uv);
                CHECK(count == 1);  // only u itself sits at distance 0 from u
            }
        }
        CHECK(total == n);

        // marginals equal sphere sizes around each endpoint
        const auto du = bfs_distances(g, u).dist;
        const auto dv = bfs_distances(g, v).dist;
        for (const auto& [i, sum] : row_sums)
            CHECK(sum == std::count(du.begin(), du.end(), i));
        for (const auto& [j, sum] : col_sums)
            CHECK(sum == std::count(dv.begin(), dv.end(), j));
    }
}

TEST_CASE("near_pair_count") {
    CHECK(near_pair_count(complete_graph(4)) == 6);
    CHECK(near_pair_count(path_graph(5)) == 7);

    // brute-force cross-check on a random graph
    const Graph g = random_connected(96, 2.5, 91);
    std::uint64_t brute = 0;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        const auto du = bfs_distances(g, u).dist;
        for (Vertex v = u + 1; v < g.num_vertices(); ++v)
            if (du[static_cast<std::size_t>(v)] <= 2) ++brute;
    }
    CHECK(near_pair_count(g) == brute);
}

TEST_CASE("chernoff_tail") {
    CHECK(chernoff_tail(0.5, 12.0, ChernoffForm::TwoSided) ==
          doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK(chernoff_tail(1.0, 3.0, ChernoffForm::Upper) == doctest::Approx(std::exp(-1.0)));
    CHECK(chernoff_tail(0.0, 17.0, ChernoffForm::Upper) == doctest::Approx(1.0));

    CHECK_THROWS_AS(chernoff_tail(1.0, 5.0, ChernoffForm::TwoSided), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_tail(0.0, 5.0, ChernoffForm::TwoSided), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_tail(-0.1, 5.0, ChernoffForm::Upper), std::invalid_argument);

    // monotone decreasing in mu and in delta inside each domain
    double prev = 10.0;
    for (double mu : {1.0, 5.0, 20.0, 80.0}) {
        const double cur = chernoff_tail(0.3, mu, ChernoffForm::TwoSided);
        CHECK(cur < prev);
        prev = cur;
    }
    prev = 10.0;
    for (double d : {0.1, 0.3, 0.6, 0.9}) {
        const double cur = chernoff_tail(d, 25.0, ChernoffForm::TwoSided);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("degree concentration check") {
    // p = 1: all degrees equal n-1 exactly
    const DegreeConcentrationReport complete =
        degree_concentration_check(GraphParams::with_p(64, 1.0, 3), 2);
    CHECK(complete.mean_fraction == 0.0);

    const DegreeConcentrationReport mc =
        degree_concentration_check(GraphParams::with_p(2048, 0.02, 5), 5);
    CHECK(mc.per_vertex_budget == doctest::Approx(2.0 * std::exp(-2047.0 * 0.02 / 12.0)));
    CHECK(mc.mean_fraction >= 0.0);
    CHECK(mc.mean_fraction < 10.0 * mc.per_vertex_budget + 0.01);

    CHECK_THROWS_AS(degree_concentration_check(GraphParams::with_p(64, 0.001, 1), 1),
                    std::invalid_argument);
}

TEST_CASE("isolated vertex check") {
    const IsolatedVertexReport report = isolated_vertex_check(1000, 10.0, 50, 7);
    CHECK(report.p == doctest::Approx(1e-4));
    CHECK(report.threshold == doctest::Approx(400.0));
    CHECK(report.failure_bound == doctest::Approx(2.0 * std::exp(-1000.0 / 30.0)));
    CHECK(report.exceed_count == 0);
    CHECK(report.max_non_isolated < 400);

    CHECK_THROWS_AS(isolated_vertex_check(10, 0.001, 1, 1), std::invalid_argument);
}

TEST_CASE("witness census on K_n minus one edge") {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v = u + 1; v < 6; ++v)
            if (!(u == 2 && v == 4)) edges.emplace_back(u, v);
    const Graph g = Graph::from_edges(6, edges);
    WitnessCensusOptions opts;
    opts.sample_pairs = 1;
    std::mt19937_64 rng(3);
    const WitnessCensus census = witness_census(g, opts, rng);
    CHECK(census.sampled_pairs == 1);
    CHECK(census.profiles.front().u == 2);
    CHECK(census.profiles.front().v == 4);
    CHECK(census.near_pairs + census.far_pairs == census.sampled_pairs);
}

TEST_CASE("witness census sampling and aggregates") {
    const Graph g = random_connected(512, 2.0, 97);
    WitnessCensusOptions opts;
    opts.sample_pairs = 60;
    opts.min_far_pairs = 20;
    std::mt19937_64 rng(13);
    const WitnessCensus census = witness_census(g, opts, rng);
    CHECK(census.sampled_pairs >= 60);
    CHECK(census.far_pairs >= 20);
    CHECK(census.near_pairs + census.far_pairs == census.sampled_pairs);
    CHECK(census.fraction_far_at_threshold >= 0.0);
    CHECK(census.fraction_far_at_threshold <= 1.0);
    CHECK(census.far_ratio_p10 <= census.far_ratio_median);
    CHECK(census.far_ratio_median <= census.far_ratio_p90);

    // deterministic replay
    std::mt19937_64 rng2(13);
    const WitnessCensus again = witness_census(g, opts, rng2);
    CHECK(again.far_ratio_median == census.far_ratio_median);
    CHECK(again.sampled_pairs == census.sampled_pairs);
}

TEST_CASE("exact witness census agrees with full enumeration") {
    const Graph g = random_connected(48, 2.5, 101);
    const WitnessCensus census = witness_census_exact(g, 0.3);
    std::size_t non_edges = 0;
    for (Vertex u = 0; u < g.num_vertices(); ++u)
        for (Vertex v = u + 1; v < g.num_vertices(); ++v)
            if (!g.has_edge(u, v)) ++non_edges;
    CHECK(census.sampled_pairs == non_edges);
    CHECK(census.profiles.size() == non_edges);

    // spot-check a few profiles against witness_set
    for (std::size_t i = 0; i < census.profiles.size(); i += 97) {
        const auto& prof = census.profiles[i];
        CHECK(prof.count == witness_set(g, prof.u, prof.v).count);
    }
}
