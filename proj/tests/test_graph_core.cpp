#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "oracle_recon/graph.hpp"

using namespace oracle_recon;

namespace {

// Independent all-pairs oracle for cross-checking BFS.
std::vector<std::vector<std::int64_t>> floyd_warshall(const Graph& g) {
    const std::size_t n = static_cast<std::size_t>(g.num_vertices());
    const std::int64_t inf = std::numeric_limits<std::int32_t>::max();
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (Vertex u = 0; u < g.num_vertices(); ++u)
        for (Vertex v : g.neighbors(u)) d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

Graph random_connected(Vertex n, double c, std::uint64_t seed) {
    GraphParams params = GraphParams::with_c(n, c, seed);
    params.max_resamples = 200;
    return gnp_generate(params).graph;
}

}  // namespace

TEST_CASE("fixture graphs") {
    const Graph p4 = path_graph(4);
    CHECK(p4.num_edges() == 3);
    CHECK(p4.has_edge(0, 1));
    CHECK(p4.has_edge(1, 2));
    CHECK(p4.has_edge(2, 3));
    CHECK_FALSE(p4.has_edge(0, 2));

    const Graph c4 = cycle_graph(4);
    CHECK(c4.num_edges() == 4);
    for (Vertex v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);
    CHECK_THROWS_AS(cycle_graph(2), std::invalid_argument);

    CHECK(complete_graph(5).num_edges() == 10);
}

TEST_CASE("from_edges rejects malformed input") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("bfs distances on fixtures") {
    const DistanceVector p = bfs_distances(path_graph(4), 0);
    CHECK(p.dist == std::vector<std::int32_t>{0, 1, 2, 3});

    const DistanceVector c = bfs_distances(cycle_graph(5), 0);
    CHECK(c.dist == std::vector<std::int32_t>{0, 1, 2, 2, 1});

    const Graph two_comp = Graph::from_edges(3, {{0, 1}});
    const DistanceVector d = bfs_distances(two_comp, 0);
    CHECK(d.dist[0] == 0);
    CHECK(d.dist[1] == 1);
    CHECK(d.dist[2] == kUnreachable);
}

TEST_CASE("degree stats, connectivity, diameter") {
    const Graph p4 = path_graph(4);
    const DegreeStats stats = degree_stats(p4);
    CHECK(stats.min == 1);
    CHECK(stats.max == 2);
    CHECK(stats.mean == doctest::Approx(1.5));
    CHECK(diameter(p4) == 3);
    CHECK(diameter(complete_graph(5)) == 1);

    const Graph two_comp = Graph::from_edges(3, {{0, 1}});
    CHECK_FALSE(is_connected(two_comp));
    CHECK_THROWS_AS(diameter(two_comp), std::runtime_error);
    CHECK_THROWS_AS(eccentricity(two_comp, 0), std::runtime_error);
    CHECK(is_connected(path_graph(1)));

    CHECK(eccentricity(path_graph(5), 0) == 4);
    CHECK(eccentricity(path_graph(5), 2) == 2);
}

TEST_CASE("gnp degenerate probabilities") {
    GraphParams empty = GraphParams::with_p(4, 0.0, 7);
    empty.require_connected = false;
    CHECK(gnp_generate(empty).graph.num_edges() == 0);

    const GraphParams full = GraphParams::with_p(4, 1.0, 7);
    const GnpResult k4 = gnp_generate(full);
    CHECK(k4.graph.num_edges() == 6);
    CHECK(k4.resamples == 0);
}

TEST_CASE("gnp is reproducible and seed-sensitive") {
    GraphParams params = GraphParams::with_p(256, 0.05, 42);
    params.require_connected = false;
    const Graph a = gnp_generate(params).graph;
    const Graph b = gnp_generate(params).graph;
    CHECK(a == b);
    params.seed = 43;
    CHECK_FALSE(a == gnp_generate(params).graph);
}

TEST_CASE("gnp mean edge count matches p * (n choose 2)") {
    // n=1000, p=0.01: expectation 4995, Monte-Carlo mean over 200 seeds
    // concentrates far inside the 3% band.
    const double expected = 0.01 * 1000.0 * 999.0 / 2.0;
    double total = 0;
    for (int t = 0; t < 200; ++t) {
        GraphParams params = GraphParams::with_p(1000, 0.01, 1000 + static_cast<std::uint64_t>(t));
        params.require_connected = false;
        total += static_cast<double>(gnp_generate(params).graph.num_edges());
    }
    const double mean = total / 200.0;
    CHECK(std::abs(mean - expected) / expected < 0.03);
}

TEST_CASE("gnp connectivity enforcement") {
    // Far below the threshold: must fail with the regime named.
    GraphParams params = GraphParams::with_p(64, 0.01, 5);
    params.max_resamples = 3;
    CHECK_THROWS_WITH_AS(static_cast<void>(gnp_generate(params)),
                         doctest::Contains("connectivity threshold"), std::runtime_error);

    // Comfortably above: succeeds and reports the resample count.
    const GnpResult ok = gnp_generate(GraphParams::with_c(128, 4.0, 5));
    CHECK(is_connected(ok.graph));
    CHECK(ok.resamples >= 0);
}

TEST_CASE("edge-Lipschitz invariant |d(u)-d(v)| <= 1 across edges") {
    std::mt19937_64 seeds(11);
    for (int t = 0; t < 10; ++t) {
        GraphParams params = GraphParams::with_p(128, 0.04, seeds());
        params.require_connected = false;
        const Graph g = gnp_generate(params).graph;
        for (Vertex src = 0; src < g.num_vertices(); src += 17) {
            const DistanceVector dv = bfs_distances(g, src);
            for (const auto& [u, v] : g.edge_list()) {
                const std::int32_t du = dv.dist[static_cast<std::size_t>(u)];
                const std::int32_t dw = dv.dist[static_cast<std::size_t>(v)];
                if (du != kUnreachable && dw != kUnreachable)
                    CHECK(std::abs(du - dw) <= 1);
                else
                    CHECK(du == dw);  // same component
            }
        }
    }
}

TEST_CASE("bfs agrees with Floyd-Warshall on small connected graphs") {
    std::mt19937_64 seeds(13);
    for (int t = 0; t < 40; ++t) {
        const Vertex n = 8 + static_cast<Vertex>(seeds() % 57);
        const Graph g = random_connected(n, 2.5, seeds());
        const auto fw = floyd_warshall(g);
        for (Vertex u = 0; u < n; ++u) {
            const DistanceVector dv = bfs_distances(g, u);
            for (Vertex v = 0; v < n; ++v)
                CHECK(static_cast<std::int64_t>(dv.dist[static_cast<std::size_t>(v)]) ==
                      fw[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
        }
    }
}

TEST_CASE("triangle inequality on sampled triples") {
    const Graph g = random_connected(256, 3.0, 99);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Vertex> pick(0, g.num_vertices() - 1);
    for (int t = 0; t < 200; ++t) {
        const Vertex u = pick(rng), v = pick(rng), w = pick(rng);
        const auto du = bfs_distances(g, u).dist;
        const auto dv = bfs_distances(g, v).dist;
        CHECK(du[static_cast<std::size_t>(w)] <=
              du[static_cast<std::size_t>(v)] + dv[static_cast<std::size_t>(w)]);
    }
}

TEST_CASE("diameter of supercritical gnp stays in the expected band") {
    for (std::uint64_t seed : {21ULL, 22ULL}) {
        const Graph g = gnp_generate(GraphParams::with_c(2048, 6.0, seed)).graph;
        const std::int32_t d = diameter(g);
        CHECK(d >= 3);
        CHECK(d <= 12);
    }
}

TEST_CASE("edge list round trip and format") {
    const Graph g = random_connected(64, 3.0, 31);
    std::stringstream buffer;
    write_edge_list(g, buffer);

    Vertex n = 0;
    std::uint64_t m = 0;
    std::stringstream header(buffer.str());
    header >> n >> m;
    CHECK(n == 64);
    CHECK(m == g.num_edges());

    Graph back = read_edge_list(buffer);
    CHECK(back == g);

    // ascending pair order
    const auto edges = g.edge_list();
    for (std::size_t i = 1; i < edges.size(); ++i) CHECK(edges[i - 1] < edges[i]);
}
