#ifndef ORACLE_RECON_RECONSTRUCT_HPP
#define ORACLE_RECON_RECONSTRUCT_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "oracle_recon/graph.hpp"
#include "oracle_recon/oracle.hpp"

namespace oracle_recon {

/// Phase-1 landmark choice: s = min(ceil(alpha * Delta^2 * ln n), n) vertices
/// sampled uniformly without replacement. alpha generalizes the analysis
/// constant; desk-scale runs want alpha well below it.
struct LandmarkPlan {
    std::size_t s = 0;
    double alpha = 0.0;
    std::vector<Vertex> landmarks;  // in draw order; prefixes are themselves uniform samples
};

std::size_t landmark_count(Vertex n, double p, double alpha);
LandmarkPlan sample_landmarks(Vertex n, double p, double alpha, std::mt19937_64& rng);

/// Candidate superset of the edge set: pairs whose distances to every
/// landmark differ by at most 1.
struct PseudoEdgeSet {
    std::vector<Edge> pairs;        // canonical (u < v), ascending
    std::uint64_t residual = 0;     // |pairs| - m, filled after verification
};

// Computes the pseudo-edge set without touching all n-choose-2 pairs:
// candidates come from the distance-level buckets of the landmark that splits
// V most evenly (only same-level or adjacent-level pairs can survive), then
// are filtered by the remaining landmarks. Throws std::invalid_argument on an
// empty landmark set (the result would be every pair; use the exhaustive
// fallback instead).
PseudoEdgeSet pseudo_edges(std::span<const DistanceVector> landmark_dists, int threads = 1);

// Same filter, counting only; keeps memory flat when the set is huge.
std::uint64_t count_pseudo_edges(std::span<const DistanceVector> landmark_dists, int threads = 1);

struct ReconstructionReport {
    std::vector<Edge> edges;
    bool exact = false;
    std::size_t s = 0;
    double alpha = 0.0;
    std::uint64_t pseudo_edge_count = 0;  // C(n,2) on the exhaustive path
    std::uint64_t queries_phase1 = 0;     // distinct pairs first seen by phase 1
    std::uint64_t queries_phase2 = 0;     // distinct pairs first seen by phase 2
    std::uint64_t queries_distinct_total = 0;
    bool fallback_used = false;
    double wall_ms = 0.0;
};

// The two-phase algorithm: Query(S, V), compute pseudo-edges, verify each
// candidate. Falls back to the exhaustive scan when n*s >= n-choose-2, so the
// trivial bound is never exceeded. Exactness is verified out-of-band against
// the hidden graph; that comparison is not metered.
ReconstructionReport reconstruct(DistanceOracle& oracle, const LandmarkPlan& plan,
                                 int threads = 1);

// Queries every pair; the always-exact baseline.
ReconstructionReport reconstruct_exhaustive(DistanceOracle& oracle, int threads = 1);

namespace detail {

/// Shared machinery for enumerate-and-filter over candidate pairs. Tasks are
/// independent bucket ranges so callers can fan them out across threads and
/// merge per-task results in task order for deterministic output.
class PseudoEdgeEnumerator {
public:
    explicit PseudoEdgeEnumerator(std::span<const DistanceVector> landmark_dists);

    std::size_t num_tasks() const { return tasks_.size(); }

    template <class Emit>
    void run_task(std::size_t t, Emit&& emit) const {
        const Task& task = tasks_[t];
        const auto& lo = buckets_[task.bucket];
        if (task.cross) {
            const auto& hi = buckets_[task.bucket + 1];
            for (Vertex u : lo)
                for (Vertex v : hi) {
                    if (survives(u, v))
                        emit(std::min(u, v), std::max(u, v));
                }
        } else {
            for (std::size_t i = 0; i < lo.size(); ++i)
                for (std::size_t j = i + 1; j < lo.size(); ++j) {
                    if (survives(lo[i], lo[j])) emit(lo[i], lo[j]);
                }
        }
    }

private:
    struct Task {
        std::size_t bucket;
        bool cross;  // pairs (bucket, bucket+1) instead of within bucket
    };

    bool survives(Vertex u, Vertex v) const {
        for (const DistanceVector* row : filters_) {
            const std::int64_t du = row->dist[static_cast<std::size_t>(u)];
            const std::int64_t dv = row->dist[static_cast<std::size_t>(v)];
            const std::int64_t diff = du >= dv ? du - dv : dv - du;
            if (diff > 1) return false;
        }
        return true;
    }

    std::vector<std::vector<Vertex>> buckets_;       // levels of the pivot landmark
    std::vector<const DistanceVector*> filters_;     // remaining landmarks, cheapest first
    std::vector<Task> tasks_;
};

}  // namespace detail

}  // namespace oracle_recon

#endif
