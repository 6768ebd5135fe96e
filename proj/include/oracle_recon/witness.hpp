#ifndef ORACLE_RECON_WITNESS_HPP
#define ORACLE_RECON_WITNESS_HPP

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oracle_recon/graph.hpp"

namespace oracle_recon {

/// Witness set of a non-edge {u,v}: vertices x with |d(x,u) - d(x,v)| >= 2.
/// Querying any witness against u and v proves uv is a non-edge.
struct WitnessProfile {
    Vertex u = 0;
    Vertex v = 0;
    std::int32_t dist_uv = 0;
    std::vector<Vertex> witnesses;  // may be left empty when only the count is kept
    std::size_t count = 0;
    double density_ratio = 0.0;  // count / (n / delta^2)
};

// Exact witness set via two BFS runs. Throws std::invalid_argument when u,v
// are adjacent (witnesses are defined for non-edges only) or equal. delta
// defaults to the realized average degree 2m/n when <= 0.
WitnessProfile witness_set(const Graph& g, Vertex u, Vertex v, double delta = 0.0);

// Common k-neighbourhood: vertices whose min distance to {u,v} is exactly k.
std::vector<Vertex> common_sphere(const Graph& g, Vertex u, Vertex v, int k);

/// Raised by sphere_partition on pairs at distance <= 2; those pairs belong
/// to the near-pair accounting, not the layered analysis.
struct NearPairError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SphereLayer {
    int k = 0;
    std::vector<Vertex> sphere;  // N^k(u,v)
    std::vector<Vertex> a;       // clean part
    std::vector<Vertex> b;       // contaminated part, union of the three pieces below
    std::vector<Vertex> b1;      // neighbours of B_{k-1}, inside the layer
    std::vector<Vertex> b2;      // neighbours of A_{k-1} vertices with an intra-layer edge
    std::vector<Vertex> b3;      // >= 2 neighbours in A_{k-1}
};

/// Layered decomposition of the common neighbourhoods of a far pair:
/// A_1 = N(u,v), B_1 = empty; for k >= 2, B_k collects the three
/// contamination mechanisms and A_k is the rest. ell is the largest k with
/// |N^{k-1}(u,v)| <= n/delta^2 (0 when no k qualifies).
struct SpherePartition {
    Vertex u = 0;
    Vertex v = 0;
    std::int32_t dist_uv = 0;
    double delta_used = 0.0;
    std::vector<SphereLayer> layers;  // layers[i] holds k = i+1
    int ell = 0;
};

// Requires d(u,v) >= 3 (else NearPairError) and a connected graph. delta
// defaults to the realized average degree when <= 0.
SpherePartition sphere_partition(const Graph& g, Vertex u, Vertex v, double delta = 0.0);

/// Joint distance histogram: cell (i,j) counts vertices at distance i from u
/// and j from v. Cells are sorted by (i,j); counts sum to n on connected
/// graphs.
struct ProfileCensus {
    Vertex u = 0;
    Vertex v = 0;
    std::int32_t dist_uv = 0;
    std::vector<std::pair<std::pair<std::int32_t, std::int32_t>, std::int64_t>> cells;
};

ProfileCensus profile_census(const Graph& g, Vertex u, Vertex v);

// Number of unordered pairs at distance 1 or 2, exact, via per-vertex
// two-step neighbourhoods with double counting corrected.
std::uint64_t near_pair_count(const Graph& g);

enum class ChernoffForm {
    TwoSided,  // P(|X - mu| >= delta*mu) <= 2*exp(-delta^2*mu/3), 0 < delta < 1
    Upper,     // P(X >= (1+delta)*mu) <= exp(-delta^2*mu/(2+delta)), delta >= 0
};

// Evaluates the bound; throws std::invalid_argument when delta is outside the
// chosen form's range or mu < 0.
double chernoff_tail(double delta, double mu, ChernoffForm form);

/// Monte-Carlo check of degree concentration: fraction of vertices with
/// degree outside [delta/2, 3*delta/2] per trial, against the per-vertex
/// Chernoff budget 2*exp(-delta/12).
struct DegreeConcentrationReport {
    Vertex n = 0;
    double p = 0.0;
    double delta = 0.0;
    double per_vertex_budget = 0.0;
    std::vector<double> out_of_band_fraction;  // one entry per trial
    double mean_fraction = 0.0;
    double max_fraction = 0.0;
};

DegreeConcentrationReport degree_concentration_check(const GraphParams& params, int trials);

/// Monte-Carlo check of the sparse-regime isolated-vertex bound: G(N, 1/(N*delta))
/// has at most 4N/delta non-isolated vertices, failing with probability at
/// most 2*exp(-N/(3*delta)).
struct IsolatedVertexReport {
    Vertex n = 0;
    double delta = 0.0;
    double p = 0.0;
    double threshold = 0.0;          // 4N/delta
    double failure_bound = 0.0;      // 2*exp(-N/(3*delta))
    std::vector<int> non_isolated;   // one entry per trial
    int exceed_count = 0;
    int max_non_isolated = 0;
};

IsolatedVertexReport isolated_vertex_check(Vertex n, double delta, int trials,
                                           std::uint64_t seed);

struct WitnessCensusOptions {
    std::size_t sample_pairs = 200;   // non-adjacent pairs to draw
    std::size_t min_far_pairs = 0;    // keep sampling until this many have d >= 3
    double density_threshold = 0.3;   // in units of n/delta^2
    double delta_override = 0.0;      // <= 0 selects the realized average degree
    bool keep_witness_lists = true;
};

/// Aggregate over sampled (or exhaustively enumerated) non-adjacent pairs:
/// the near/far split and how witness counts compare to the n/delta^2 scale.
struct WitnessCensus {
    Vertex n = 0;
    double delta_used = 0.0;
    double density_threshold = 0.0;
    std::size_t sampled_pairs = 0;
    std::size_t near_pairs = 0;  // d <= 2
    std::size_t far_pairs = 0;   // d >= 3
    std::vector<WitnessProfile> profiles;  // all sampled non-edges, far and near
    double fraction_far_at_threshold = 0.0;
    double far_ratio_p10 = 0.0;
    double far_ratio_median = 0.0;
    double far_ratio_p90 = 0.0;
};

// Rejection-samples uniformly random non-adjacent pairs (edges rejected,
// duplicates rejected), classifies by distance, and profiles each pair with
// two BFS runs. Throws std::invalid_argument on an empty request.
WitnessCensus witness_census(const Graph& g, const WitnessCensusOptions& opts,
                             std::mt19937_64& rng);

// Exact mode: every non-adjacent pair. Intended for n <= ~2048; the caller
// gates the size.
WitnessCensus witness_census_exact(const Graph& g, double density_threshold,
                                   double delta_override = 0.0);

/// Per-layer aggregate of sphere partitions over a pair sample, plus the
/// deterministic no-neighbour-in-layer witness check.
struct PartitionCensusRow {
    std::size_t pair_id = 0;
    Vertex u = 0;
    Vertex v = 0;
    int k = 0;
    std::size_t layer_size = 0;
    std::size_t a_size = 0;
    std::size_t b_size = 0;
    std::size_t b1 = 0;
    std::size_t b2 = 0;
    std::size_t b3 = 0;
};

struct PartitionCensus {
    double delta_used = 0.0;
    std::size_t min_layer_size = 8;  // layers below this are excluded from fractions
    std::vector<PartitionCensusRow> rows;
    std::vector<double> b_fractions;          // |B_k|/|N^k| over included layers
    double median_b_fraction = 0.0;
    std::size_t excluded_small_layers = 0;
    std::vector<double> horizon_witness_fraction;  // |A_ell ∩ W|/|A_ell| per pair with A_ell nonempty
    std::size_t clean_witness_violations = 0;  // x in A_k, no neighbour in N^k, yet not a witness
    std::size_t half_witness_violations = 0;  // horizon layers with witness share < 1/2
};

// Requires every sampled pair to satisfy d >= 3; throws on an empty sample.
PartitionCensus partition_census(const Graph& g, std::span<const Edge> pairs, double delta,
                                 std::size_t min_layer_size = 8);

}  // namespace oracle_recon

#endif
