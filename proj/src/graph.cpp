#include "oracle_recon/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oracle_recon {

Graph Graph::from_edges(Vertex n, const std::vector<Edge>& edges) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop");
        canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
        throw std::invalid_argument("graph: duplicate edge");

    Graph g;
    g.n_ = n;
    g.m_ = canon.size();
    std::vector<Vertex> deg(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : canon) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 0; v < n; ++v)
        g.offsets_[static_cast<std::size_t>(v) + 1] =
            g.offsets_[static_cast<std::size_t>(v)] + static_cast<std::size_t>(deg[static_cast<std::size_t>(v)]);
    g.adj_.resize(2 * canon.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : canon) {
        g.adj_[cursor[static_cast<std::size_t>(u)]++] = v;
        g.adj_[cursor[static_cast<std::size_t>(v)]++] = u;
    }
    // Sorted insertion order of canon gives sorted lists for the u side; the
    // v side needs an explicit sort.
    for (Vertex v = 0; v < n; ++v) {
        auto nb = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[static_cast<std::size_t>(v)]);
        auto ne = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[static_cast<std::size_t>(v) + 1]);
        if (!std::is_sorted(nb, ne)) std::sort(nb, ne);
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

double Graph::average_degree() const {
    if (n_ == 0) return 0.0;
    return 2.0 * static_cast<double>(m_) / static_cast<double>(n_);
}

GraphParams GraphParams::with_p(Vertex n, double p, std::uint64_t seed) {
    GraphParams params;
    params.n = n;
    params.p = p;
    params.delta = static_cast<double>(n - 1) * p;
    params.seed = seed;
    params.validate();
    return params;
}

GraphParams GraphParams::with_c(Vertex n, double c, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gnp: c-mode needs n >= 2");
    return with_p(n, c * std::log(static_cast<double>(n)) / static_cast<double>(n), seed);
}

GraphParams GraphParams::with_gamma(Vertex n, double gamma, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gnp: gamma-mode needs n >= 2");
    return with_p(n, std::pow(static_cast<double>(n), -gamma), seed);
}

void GraphParams::validate() const {
    if (n < 1) throw std::invalid_argument("gnp: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must be in [0,1]");
    if (max_resamples < 0) throw std::invalid_argument("gnp: max_resamples must be >= 0");
    const double expected_delta = static_cast<double>(n - 1) * p;
    if (delta != expected_delta) throw std::invalid_argument("gnp: delta must equal (n-1)*p");
}

namespace {

// Batagelj-Brandes skip sampling: walks the (u,v) pairs with u > v in order,
// jumping geometrically between successes. O(m) expected draws.
Graph gnp_sample_once(Vertex n, double p, std::mt19937_64& rng) {
    if (p <= 0.0 || n < 2) return Graph::from_edges(n, {});
    if (p >= 1.0) return complete_graph(n);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(
        p * 0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * 1.1) + 16);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    while (v < n) {
        const double r = unit(rng);
        w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
        while (w >= v && v < n) {
            w -= v;
            ++v;
        }
        if (v < n)
            edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

GnpResult gnp_generate(const GraphParams& params) {
    params.validate();
    std::mt19937_64 rng(params.seed);
    GnpResult result;
    result.graph = gnp_sample_once(params.n, params.p, rng);
    result.resamples = 0;
    if (!params.require_connected) return result;
    while (!is_connected(result.graph)) {
        if (result.resamples >= params.max_resamples) {
            std::ostringstream msg;
            msg << "gnp: no connected sample after " << result.resamples
                << " resamples (n=" << params.n << ", p=" << params.p
                << "); p is likely below the connectivity threshold ln(n)/n";
            throw std::runtime_error(msg.str());
        }
        ++result.resamples;
        result.graph = gnp_sample_once(params.n, params.p, rng);
    }
    return result;
}

Graph path_graph(Vertex n) {
    if (n < 1) throw std::invalid_argument("path_graph: n must be >= 1");
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

Graph cycle_graph(Vertex n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: n must be >= 3");
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n - 1, 0);
    return Graph::from_edges(n, edges);
}

Graph complete_graph(Vertex n) {
    if (n < 1) throw std::invalid_argument("complete_graph: n must be >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

DistanceVector bfs_distances(const Graph& g, Vertex src) {
    const Vertex n = g.num_vertices();
    if (src < 0 || src >= n) throw std::invalid_argument("bfs: source out of range");
    DistanceVector dv;
    dv.source = src;
    dv.dist.assign(static_cast<std::size_t>(n), kUnreachable);
    std::vector<Vertex> queue(static_cast<std::size_t>(n));
    std::size_t head = 0, tail = 0;
    dv.dist[static_cast<std::size_t>(src)] = 0;
    queue[tail++] = src;
    while (head < tail) {
        const Vertex u = queue[head++];
        const std::int32_t du = dv.dist[static_cast<std::size_t>(u)];
        for (Vertex w : g.neighbors(u)) {
            if (dv.dist[static_cast<std::size_t>(w)] == kUnreachable) {
                dv.dist[static_cast<std::size_t>(w)] = du + 1;
                queue[tail++] = w;
            }
        }
    }
    return dv;
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats stats;
    const Vertex n = g.num_vertices();
    if (n == 0) return stats;
    stats.min = g.degree(0);
    stats.max = g.degree(0);
    for (Vertex v = 1; v < n; ++v) {
        stats.min = std::min(stats.min, g.degree(v));
        stats.max = std::max(stats.max, g.degree(v));
    }
    stats.mean = g.average_degree();
    return stats;
}

bool is_connected(const Graph& g) {
    const Vertex n = g.num_vertices();
    if (n <= 1) return true;
    const DistanceVector dv = bfs_distances(g, 0);
    for (std::int32_t d : dv.dist)
        if (d == kUnreachable) return false;
    return true;
}

std::int32_t eccentricity(const Graph& g, Vertex v) {
    const DistanceVector dv = bfs_distances(g, v);
    std::int32_t ecc = 0;
    for (std::int32_t d : dv.dist) {
        if (d == kUnreachable)
            throw std::runtime_error("eccentricity: graph is disconnected");
        ecc = std::max(ecc, d);
    }
    return ecc;
}

std::int32_t diameter(const Graph& g) {
    const Vertex n = g.num_vertices();
    if (n == 0) throw std::runtime_error("diameter: empty graph");
    std::int32_t diam = 0;
    for (Vertex v = 0; v < n; ++v) diam = std::max(diam, eccentricity(g, v));
    return diam;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
    Vertex n = 0;
    std::uint64_t m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("edge list: bad header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        Vertex u = 0, v = 0;
        if (!(in >> u >> v)) throw std::runtime_error("edge list: truncated");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

}  // namespace oracle_recon
