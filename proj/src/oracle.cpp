#include "oracle_recon/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "oracle_recon/util.hpp"

namespace oracle_recon {

namespace {
// Bitmap storage tops out at ~67 MB (n = 32768); beyond that the hashed set
// is cheaper for realistic query volumes.
constexpr Vertex kBitmapMaxN = 32768;
}  // namespace

DistanceOracle::PairSet::PairSet(Vertex n)
    : n_(n), use_bitmap_(n <= kBitmapMaxN) {
    if (use_bitmap_) {
        const std::uint64_t pairs =
            static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1) / 2;
        bitmap_ = std::vector<std::atomic<std::uint64_t>>((pairs + 63) / 64);
        for (auto& word : bitmap_) word.store(0, std::memory_order_relaxed);
    }
}

std::uint64_t DistanceOracle::PairSet::index_of(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    // Triangular index of (u,v), u < v.
    return static_cast<std::uint64_t>(u) * (2 * static_cast<std::uint64_t>(n_) - u - 1) / 2 +
           static_cast<std::uint64_t>(v - u - 1);
}

bool DistanceOracle::PairSet::insert(Vertex u, Vertex v) {
    const std::uint64_t idx = index_of(u, v);
    if (use_bitmap_) {
        const std::uint64_t mask = 1ULL << (idx & 63);
        const std::uint64_t prev =
            bitmap_[idx >> 6].fetch_or(mask, std::memory_order_relaxed);
        return (prev & mask) == 0;
    }
    std::lock_guard<std::mutex> lock(hashed_mutex_);
    return hashed_.insert(idx).second;
}

DistanceOracle::DistanceOracle(Graph g, bool enable_memo)
    : hidden_(std::move(g)),
      memo_enabled_(enable_memo),
      memo_(static_cast<std::size_t>(hidden_.num_vertices())),
      seen_(hidden_.num_vertices()) {
    if (!is_connected(hidden_))
        throw std::invalid_argument("oracle: hidden graph must be connected");
}

void DistanceOracle::check_vertex(Vertex v) const {
    if (v < 0 || v >= hidden_.num_vertices())
        throw std::invalid_argument("oracle: vertex out of range");
}

std::shared_ptr<const DistanceVector> DistanceOracle::source_distances(Vertex src) {
    if (memo_enabled_) {
        {
            std::shared_lock lock(memo_mutex_);
            if (memo_[static_cast<std::size_t>(src)]) return memo_[static_cast<std::size_t>(src)];
        }
        auto fresh = std::make_shared<const DistanceVector>(bfs_distances(hidden_, src));
        std::unique_lock lock(memo_mutex_);
        auto& slot = memo_[static_cast<std::size_t>(src)];
        if (!slot) slot = std::move(fresh);  // first writer wins, values identical
        return slot;
    }
    return std::make_shared<const DistanceVector>(bfs_distances(hidden_, src));
}

void DistanceOracle::account(const std::string& phase, std::uint64_t new_distinct,
                             std::uint64_t new_requested) {
    distinct_pairs_.fetch_add(new_distinct, std::memory_order_relaxed);
    requested_.fetch_add(new_requested, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(phase_mutex_);
    auto& counters = per_phase_[phase];
    counters.distinct += new_distinct;
    counters.requested += new_requested;
}

std::int32_t DistanceOracle::query(Vertex u, Vertex v, const std::string& phase) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        account(phase, 0, 1);
        return 0;
    }
    const bool fresh = seen_.insert(u, v);
    account(phase, fresh ? 1 : 0, 1);
    return source_distances(u)->dist[static_cast<std::size_t>(v)];
}

DistanceTable DistanceOracle::query_block(std::span<const Vertex> a, std::span<const Vertex> b,
                                          const std::string& phase, int threads) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("oracle: query_block sides must be nonempty");
    for (Vertex v : a) check_vertex(v);
    for (Vertex v : b) check_vertex(v);

    DistanceTable table;
    table.a.assign(a.begin(), a.end());
    table.b.assign(b.begin(), b.end());
    table.d.assign(a.size() * b.size(), 0);

    const bool bfs_from_a = a.size() <= b.size();
    const auto& sources = bfs_from_a ? table.a : table.b;
    std::vector<std::shared_ptr<const DistanceVector>> rows(sources.size());
    parallel_for_index(sources.size(), threads,
                       [&](std::size_t i) { rows[i] = source_distances(sources[i]); });

    for (std::size_t i = 0; i < table.a.size(); ++i)
        for (std::size_t j = 0; j < table.b.size(); ++j)
            table.d[i * table.b.size() + j] =
                bfs_from_a ? rows[i]->dist[static_cast<std::size_t>(table.b[j])]
                           : rows[j]->dist[static_cast<std::size_t>(table.a[i])];

    std::uint64_t fresh = 0;
    for (Vertex x : table.a)
        for (Vertex y : table.b)
            if (x != y && seen_.insert(x, y)) ++fresh;
    account(phase, fresh, static_cast<std::uint64_t>(table.a.size()) * table.b.size());
    return table;
}

std::vector<DistanceVector> DistanceOracle::query_all_from(std::span<const Vertex> sources,
                                                           const std::string& phase,
                                                           int threads) {
    if (sources.empty())
        throw std::invalid_argument("oracle: query_all_from needs at least one source");
    for (Vertex v : sources) check_vertex(v);
    const Vertex n = hidden_.num_vertices();

    std::vector<DistanceVector> rows(sources.size());
    std::vector<Vertex> srcs(sources.begin(), sources.end());
    parallel_for_index(srcs.size(), threads,
                       [&](std::size_t i) { rows[i] = *source_distances(srcs[i]); });

    std::uint64_t fresh = 0;
    for (Vertex s : srcs)
        for (Vertex v = 0; v < n; ++v)
            if (s != v && seen_.insert(s, v)) ++fresh;
    account(phase, fresh, static_cast<std::uint64_t>(srcs.size()) * static_cast<std::uint64_t>(n));
    return rows;
}

QueryLedger DistanceOracle::ledger_snapshot() const {
    QueryLedger ledger;
    ledger.distinct_pairs = distinct_pairs_.load(std::memory_order_relaxed);
    ledger.requested = requested_.load(std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(phase_mutex_);
    ledger.per_phase = per_phase_;
    return ledger;
}

}  // namespace oracle_recon
