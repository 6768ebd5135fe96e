#ifndef ORACLE_RECON_GRAPH_HPP
#define ORACLE_RECON_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace oracle_recon {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Distance of a vertex that cannot be reached. A reserved maximal value (not
// -1) so comparisons like d < kUnreachable and min() stay monotone.
inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

/// Immutable undirected simple graph on vertices 0..n-1, stored as a CSR
/// adjacency with sorted neighbour lists. Safe to share across threads.
class Graph {
public:
    Graph() = default;

    // Builds from an unordered edge list. Throws std::invalid_argument on
    // self-loops, duplicate edges, or out-of-range endpoints.
    static Graph from_edges(Vertex n, const std::vector<Edge>& edges);

    Vertex num_vertices() const { return n_; }
    std::uint64_t num_edges() const { return m_; }

    std::span<const Vertex> neighbors(Vertex u) const {
        return {adj_.data() + offsets_[static_cast<std::size_t>(u)],
                adj_.data() + offsets_[static_cast<std::size_t>(u) + 1]};
    }
    Vertex degree(Vertex u) const {
        return static_cast<Vertex>(offsets_[static_cast<std::size_t>(u) + 1] -
                                   offsets_[static_cast<std::size_t>(u)]);
    }
    bool has_edge(Vertex u, Vertex v) const;

    // All edges as (u,v) with u < v, in ascending order.
    std::vector<Edge> edge_list() const;

    // Realized average degree 2m/n.
    double average_degree() const;

    bool operator==(const Graph& other) const = default;

private:
    Vertex n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
};

/// Hop distances from a single source; unreachable entries hold kUnreachable.
struct DistanceVector {
    Vertex source = 0;
    std::vector<std::int32_t> dist;
};

/// Parameters of a G(n,p) draw. delta is the expected average degree (n-1)p.
struct GraphParams {
    Vertex n = 0;
    double p = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    bool require_connected = true;
    int max_resamples = 64;

    static GraphParams with_p(Vertex n, double p, std::uint64_t seed);
    // p = c * ln(n) / n ("log" is natural log throughout).
    static GraphParams with_c(Vertex n, double c, std::uint64_t seed);
    // p = n^(-gamma).
    static GraphParams with_gamma(Vertex n, double gamma, std::uint64_t seed);

    void validate() const;  // throws std::invalid_argument
};

struct GnpResult {
    Graph graph;
    int resamples = 0;  // extra draws spent meeting require_connected
};

// Samples G(n,p): every unordered pair is an edge independently with
// probability p. Deterministic for fixed (n, p, seed). When
// require_connected is set, resamples on the same RNG stream until connected;
// throws std::runtime_error once max_resamples is exhausted (which signals p
// below the connectivity threshold).
GnpResult gnp_generate(const GraphParams& params);

// Deterministic fixtures.
Graph path_graph(Vertex n);
Graph cycle_graph(Vertex n);  // n >= 3
Graph complete_graph(Vertex n);

// Exact unweighted single-source shortest-path hop counts.
DistanceVector bfs_distances(const Graph& g, Vertex src);

struct DegreeStats {
    Vertex min = 0;
    Vertex max = 0;
    double mean = 0.0;
};
DegreeStats degree_stats(const Graph& g);

bool is_connected(const Graph& g);

// Max distance from v; throws std::runtime_error if some vertex is
// unreachable from v.
std::int32_t eccentricity(const Graph& g, Vertex v);
// Max eccentricity; throws std::runtime_error on disconnected graphs.
std::int32_t diameter(const Graph& g);

// Plain-text edge list: "n m" header line, then one "u v" line (u < v) per
// edge in ascending order.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

}  // namespace oracle_recon

#endif
