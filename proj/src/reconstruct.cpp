#include "oracle_recon/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oracle_recon/util.hpp"

namespace oracle_recon {

std::size_t landmark_count(Vertex n, double p, double alpha) {
    if (n < 1) throw std::invalid_argument("landmarks: n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("landmarks: alpha must be > 0");
    const double delta = static_cast<double>(n - 1) * p;
    const double raw = alpha * delta * delta * std::log(static_cast<double>(n));
    // Degenerate inputs (p = 0, n = 1) would give s = 0; one landmark keeps
    // the plan usable and the caller's fallback logic decides the rest.
    const double clamped = std::max(1.0, std::ceil(raw));
    return std::min<std::size_t>(static_cast<std::size_t>(clamped),
                                 static_cast<std::size_t>(n));
}

LandmarkPlan sample_landmarks(Vertex n, double p, double alpha, std::mt19937_64& rng) {
    LandmarkPlan plan;
    plan.alpha = alpha;
    plan.s = landmark_count(n, p, alpha);
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < plan.s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(plan.s);
    plan.landmarks = std::move(pool);
    return plan;
}

namespace detail {

PseudoEdgeEnumerator::PseudoEdgeEnumerator(std::span<const DistanceVector> landmark_dists) {
    if (landmark_dists.empty())
        throw std::invalid_argument(
            "pseudo_edges: empty landmark set (every pair would survive; use the "
            "exhaustive fallback)");
    const std::size_t n = landmark_dists.front().dist.size();
    for (const auto& row : landmark_dists)
        if (row.dist.size() != n)
            throw std::invalid_argument("pseudo_edges: landmark rows must all cover V");

    // Per-landmark level histograms; the landmark admitting the fewest
    // candidate pairs on its own becomes the pivot, the rest filter in
    // ascending order of that same score.
    std::vector<double> score(landmark_dists.size(), 0.0);
    std::vector<std::vector<std::size_t>> hist(landmark_dists.size());
    for (std::size_t l = 0; l < landmark_dists.size(); ++l) {
        std::int32_t max_finite = 0;
        std::size_t unreachable = 0;
        for (std::int32_t d : landmark_dists[l].dist) {
            if (d == kUnreachable)
                ++unreachable;
            else
                max_finite = std::max(max_finite, d);
        }
        auto& h = hist[l];
        h.assign(static_cast<std::size_t>(max_finite) + 2, 0);
        for (std::int32_t d : landmark_dists[l].dist) {
            if (d == kUnreachable)
                ++h.back();  // reserved slot, never adjacent to a finite level
            else
                ++h[static_cast<std::size_t>(d)];
        }
        double pairs = 0.0;
        for (std::size_t lev = 0; lev + 1 < h.size(); ++lev) {
            const double c = static_cast<double>(h[lev]);
            pairs += c * (c - 1.0) / 2.0;
            if (lev + 2 < h.size())  // exclude the unreachable slot
                pairs += c * static_cast<double>(h[lev + 1]);
        }
        const double u = static_cast<double>(unreachable);
        pairs += u * (u - 1.0) / 2.0;
        score[l] = pairs;
    }
    std::vector<std::size_t> order(landmark_dists.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

    const DistanceVector& pivot = landmark_dists[order.front()];
    buckets_.resize(hist[order.front()].size());
    for (std::size_t lev = 0; lev < buckets_.size(); ++lev)
        buckets_[lev].reserve(hist[order.front()][lev]);
    const std::size_t unreachable_bucket = buckets_.size() - 1;
    for (std::size_t v = 0; v < n; ++v) {
        const std::int32_t d = pivot.dist[v];
        const std::size_t lev =
            d == kUnreachable ? unreachable_bucket : static_cast<std::size_t>(d);
        buckets_[lev].push_back(static_cast<Vertex>(v));
    }

    filters_.reserve(order.size() - 1);
    for (std::size_t i = 1; i < order.size(); ++i)
        filters_.push_back(&landmark_dists[order[i]]);

    for (std::size_t lev = 0; lev < buckets_.size(); ++lev) {
        if (buckets_[lev].size() >= 2) tasks_.push_back({lev, false});
        if (lev + 2 < buckets_.size() &&  // never cross into the unreachable slot
            !buckets_[lev].empty() && !buckets_[lev + 1].empty())
            tasks_.push_back({lev, true});
    }
}

}  // namespace detail

PseudoEdgeSet pseudo_edges(std::span<const DistanceVector> landmark_dists, int threads) {
    detail::PseudoEdgeEnumerator enumerator(landmark_dists);
    std::vector<std::vector<Edge>> per_task(enumerator.num_tasks());
    parallel_for_index(enumerator.num_tasks(), threads, [&](std::size_t t) {
        enumerator.run_task(t, [&](Vertex u, Vertex v) { per_task[t].emplace_back(u, v); });
    });
    PseudoEdgeSet result;
    std::size_t total = 0;
    for (const auto& chunk : per_task) total += chunk.size();
    result.pairs.reserve(total);
    for (auto& chunk : per_task)
        result.pairs.insert(result.pairs.end(), chunk.begin(), chunk.end());
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

std::uint64_t count_pseudo_edges(std::span<const DistanceVector> landmark_dists, int threads) {
    detail::PseudoEdgeEnumerator enumerator(landmark_dists);
    std::vector<std::uint64_t> per_task(enumerator.num_tasks(), 0);
    parallel_for_index(enumerator.num_tasks(), threads, [&](std::size_t t) {
        enumerator.run_task(t, [&](Vertex, Vertex) { ++per_task[t]; });
    });
    return std::accumulate(per_task.begin(), per_task.end(), std::uint64_t{0});
}

namespace {

std::uint64_t pair_count(Vertex n) {
    return static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1) / 2;
}

bool edges_match_hidden(const std::vector<Edge>& edges, const Graph& hidden) {
    return edges == hidden.edge_list();
}

// Scans all pairs through the metered interface, one block row per source.
std::vector<Edge> exhaustive_scan(DistanceOracle& oracle, int threads) {
    const Vertex n = oracle.num_vertices();
    if (n < 2) return {};
    std::vector<std::vector<Edge>> per_source(static_cast<std::size_t>(n) - 1);
    parallel_for_index(static_cast<std::size_t>(n) - 1, threads, [&](std::size_t ui) {
        const Vertex u = static_cast<Vertex>(ui);
        std::vector<Vertex> rest;
        rest.reserve(static_cast<std::size_t>(n - u - 1));
        for (Vertex v = u + 1; v < n; ++v) rest.push_back(v);
        const Vertex a[] = {u};
        const DistanceTable table = oracle.query_block(a, rest, "exhaustive", 1);
        for (std::size_t j = 0; j < rest.size(); ++j)
            if (table.at(0, j) == 1) per_source[ui].emplace_back(u, rest[j]);
    });
    std::vector<Edge> edges;
    for (auto& chunk : per_source)
        edges.insert(edges.end(), chunk.begin(), chunk.end());
    return edges;  // already ascending: sources ascend, targets ascend per row
}

}  // namespace

ReconstructionReport reconstruct(DistanceOracle& oracle, const LandmarkPlan& plan,
                                 int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const Vertex n = oracle.num_vertices();
    for (Vertex v : plan.landmarks)
        if (v < 0 || v >= n) throw std::invalid_argument("reconstruct: landmark out of range");
    if (plan.landmarks.size() != plan.s)
        throw std::invalid_argument("reconstruct: plan size mismatch");

    ReconstructionReport report;
    report.s = plan.s;
    report.alpha = plan.alpha;
    const std::uint64_t all_pairs = pair_count(n);
    const QueryLedger before = oracle.ledger_snapshot();

    if (plan.s == 0 || static_cast<std::uint64_t>(n) * plan.s >= all_pairs) {
        report.fallback_used = true;
        report.pseudo_edge_count = all_pairs;  // S unused: every pair is a candidate
        report.edges = exhaustive_scan(oracle, threads);
    } else {
        const std::vector<DistanceVector> rows =
            oracle.query_all_from(plan.landmarks, "landmarks", threads);
        detail::PseudoEdgeEnumerator enumerator(rows);
        std::vector<std::vector<Edge>> per_task(enumerator.num_tasks());
        std::vector<std::uint64_t> per_task_pseudo(enumerator.num_tasks(), 0);
        parallel_for_index(enumerator.num_tasks(), threads, [&](std::size_t t) {
            enumerator.run_task(t, [&](Vertex u, Vertex v) {
                ++per_task_pseudo[t];
                if (oracle.query(u, v, "verify") == 1) per_task[t].emplace_back(u, v);
            });
        });
        for (std::uint64_t c : per_task_pseudo) report.pseudo_edge_count += c;
        for (auto& chunk : per_task)
            report.edges.insert(report.edges.end(), chunk.begin(), chunk.end());
        std::sort(report.edges.begin(), report.edges.end());
    }

    const QueryLedger after = oracle.ledger_snapshot();
    auto phase_delta = [&](const char* tag) -> std::uint64_t {
        const auto now = after.per_phase.find(tag);
        const std::uint64_t cur = now == after.per_phase.end() ? 0 : now->second.distinct;
        const auto old = before.per_phase.find(tag);
        const std::uint64_t prev = old == before.per_phase.end() ? 0 : old->second.distinct;
        return cur - prev;
    };
    report.queries_phase1 = phase_delta("landmarks");
    report.queries_phase2 = phase_delta("verify");
    if (report.fallback_used) report.queries_phase2 = phase_delta("exhaustive");
    report.queries_distinct_total = after.distinct_pairs - before.distinct_pairs;
    report.exact = edges_match_hidden(report.edges, oracle.hidden_for_verification());
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ReconstructionReport reconstruct_exhaustive(DistanceOracle& oracle, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    ReconstructionReport report;
    report.s = 0;
    report.alpha = 0.0;
    report.fallback_used = true;
    report.pseudo_edge_count = pair_count(oracle.num_vertices());
    const QueryLedger before = oracle.ledger_snapshot();
    report.edges = exhaustive_scan(oracle, threads);
    const QueryLedger after = oracle.ledger_snapshot();
    report.queries_distinct_total = after.distinct_pairs - before.distinct_pairs;
    const auto it = after.per_phase.find("exhaustive");
    const auto it0 = before.per_phase.find("exhaustive");
    report.queries_phase2 = (it == after.per_phase.end() ? 0 : it->second.distinct) -
                            (it0 == before.per_phase.end() ? 0 : it0->second.distinct);
    report.exact = edges_match_hidden(report.edges, oracle.hidden_for_verification());
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace oracle_recon
