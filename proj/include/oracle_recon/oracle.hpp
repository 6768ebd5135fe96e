#ifndef ORACLE_RECON_ORACLE_HPP
#define ORACLE_RECON_ORACLE_HPP

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "oracle_recon/graph.hpp"

namespace oracle_recon {

struct PhaseCounters {
    std::uint64_t distinct = 0;
    std::uint64_t requested = 0;
};

/// Query accounting. distinct_pairs counts distinct unordered pairs {u,v}
/// with u != v ever asked (the model's cost metric); requested counts raw
/// calls including repeats and self-queries. A pair's distinct increment is
/// attributed to the phase that first asked it.
struct QueryLedger {
    std::uint64_t distinct_pairs = 0;
    std::uint64_t requested = 0;
    std::map<std::string, PhaseCounters> per_phase;
};

/// Dense distance table for a block query: d(a_i, b_j) at row i, column j.
struct DistanceTable {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
    std::vector<std::int32_t> d;  // row-major, |a| x |b|

    std::int32_t at(std::size_t i, std::size_t j) const { return d[i * b.size() + j]; }
};

/// The model's query interface over a hidden connected graph. Distances are
/// served from memoized per-source BFS so simulation cost stays near
/// O(sources * (n + m)); the ledger meters queries independently of that
/// cost. Thread-safe for concurrent queries.
class DistanceOracle {
public:
    // Throws std::invalid_argument if g is disconnected (model violation).
    explicit DistanceOracle(Graph g, bool enable_memo = true);

    DistanceOracle(const DistanceOracle&) = delete;
    DistanceOracle& operator=(const DistanceOracle&) = delete;

    Vertex num_vertices() const { return hidden_.num_vertices(); }

    // d(u,v). Self-queries answer 0 and never count toward distinct_pairs.
    std::int32_t query(Vertex u, Vertex v, const std::string& phase);

    // All pairs A x B; every distinct unordered pair is accounted once.
    // Internally runs one BFS per element of the smaller side.
    DistanceTable query_block(std::span<const Vertex> a, std::span<const Vertex> b,
                              const std::string& phase, int threads = 1);

    // Query_G(sources, V): one full distance row per source, accounted like
    // the corresponding block.
    std::vector<DistanceVector> query_all_from(std::span<const Vertex> sources,
                                               const std::string& phase, int threads = 1);

    QueryLedger ledger_snapshot() const;

    // Ground truth for out-of-band exactness verification only; bypasses the
    // ledger by design. Not part of the query model.
    const Graph& hidden_for_verification() const { return hidden_; }

private:
    // Set of unordered pairs already queried. Bitmap for moderate n, hashed
    // fallback above that.
    class PairSet {
    public:
        explicit PairSet(Vertex n);
        // Returns true when {u,v} was not present before.
        bool insert(Vertex u, Vertex v);

    private:
        std::uint64_t index_of(Vertex u, Vertex v) const;
        Vertex n_;
        bool use_bitmap_;
        std::vector<std::atomic<std::uint64_t>> bitmap_;
        std::unordered_set<std::uint64_t> hashed_;
        std::mutex hashed_mutex_;
    };

    std::shared_ptr<const DistanceVector> source_distances(Vertex src);
    void check_vertex(Vertex v) const;

    Graph hidden_;
    bool memo_enabled_;
    mutable std::shared_mutex memo_mutex_;
    std::vector<std::shared_ptr<const DistanceVector>> memo_;

    PairSet seen_;
    std::atomic<std::uint64_t> distinct_pairs_{0};
    std::atomic<std::uint64_t> requested_{0};
    mutable std::mutex phase_mutex_;
    std::map<std::string, PhaseCounters> per_phase_;

    void account(const std::string& phase, std::uint64_t new_distinct, std::uint64_t new_requested);
};

}  // namespace oracle_recon

#endif
