#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>

#include "ppiphylo/kernels.hpp"

namespace ppiphylo::kernels::parallel {

// Edge iterator over ordered triples u < v < w: each triangle is found once
// and credited to all three corners.
std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
    const auto n = static_cast<std::int64_t>(g.num_nodes());
    std::vector<std::uint64_t> tri(g.num_nodes(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t ui = 0; ui < n; ++ui) {
        const auto u = static_cast<NodeIndex>(ui);
        const auto nu = g.neighbors(u);
        const auto u_hi = std::upper_bound(nu.begin(), nu.end(), u);
        for (auto vi = u_hi; vi != nu.end(); ++vi) {
            const NodeIndex v = *vi;
            const auto nv = g.neighbors(v);
            auto a = vi + 1;
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    const NodeIndex w = *a;
#pragma omp atomic
                    ++tri[u];
#pragma omp atomic
                    ++tri[v];
#pragma omp atomic
                    ++tri[w];
                    ++a;
                    ++b;
                }
            }
        }
    }
    return tri;
}

BfsSummary bfs_from_sources(const Graph& g, std::span<const NodeIndex> sources) {
    BfsSummary out;
    const auto count = static_cast<std::int64_t>(sources.size());
#pragma omp parallel
    {
        BfsSummary local;
        std::vector<std::uint32_t> dist;
        std::vector<NodeIndex> queue;
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t i = 0; i < count; ++i) {
            bfs_distances(g, sources[static_cast<std::size_t>(i)], dist, queue);
            // The queue is in BFS order, so the last entry is the farthest.
            const auto ecc = dist[queue.back()];
            if (local.histogram.size() <= ecc) local.histogram.resize(ecc + 1, 0);
            for (NodeIndex v : queue) ++local.histogram[dist[v]];
            --local.histogram[0];
            local.max_distance = std::max(local.max_distance, ecc);
        }
#pragma omp critical
        {
            if (out.histogram.size() < local.histogram.size()) out.histogram.resize(local.histogram.size(), 0);
            for (std::size_t d = 0; d < local.histogram.size(); ++d) out.histogram[d] += local.histogram[d];
            out.max_distance = std::max(out.max_distance, local.max_distance);
        }
    }
    while (!out.histogram.empty() && out.histogram.back() == 0) out.histogram.pop_back();
    if (out.histogram.size() == 1) out.histogram.clear();
    return out;
}

// Level-synchronous peeling: all nodes of current degree <= k are removed in
// one parallel round; neighbors whose degree falls to k join the next round.
std::vector<std::uint32_t> core_numbers(const Graph& g) {
    const auto n = static_cast<std::int64_t>(g.num_nodes());
    std::vector<std::atomic<std::int64_t>> deg(g.num_nodes());
    std::vector<std::uint32_t> core(g.num_nodes(), 0);
    std::vector<std::uint8_t> removed(g.num_nodes(), 0);
    for (std::int64_t v = 0; v < n; ++v) deg[v].store(g.degree(static_cast<NodeIndex>(v)), std::memory_order_relaxed);

    std::int64_t remaining = n;
    std::vector<NodeIndex> frontier;
    while (remaining > 0) {
        std::int64_t k = std::numeric_limits<std::int64_t>::max();
        for (std::int64_t v = 0; v < n; ++v)
            if (!removed[v]) k = std::min(k, deg[v].load(std::memory_order_relaxed));
        frontier.clear();
        for (std::int64_t v = 0; v < n; ++v)
            if (!removed[v] && deg[v].load(std::memory_order_relaxed) <= k) frontier.push_back(static_cast<NodeIndex>(v));

        while (!frontier.empty()) {
            const auto fsize = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel for
            for (std::int64_t i = 0; i < fsize; ++i) {
                removed[frontier[i]] = 1;
                core[frontier[i]] = static_cast<std::uint32_t>(k);
            }
            std::vector<NodeIndex> next;
#pragma omp parallel
            {
                std::vector<NodeIndex> local;
#pragma omp for schedule(dynamic, 64) nowait
                for (std::int64_t i = 0; i < fsize; ++i) {
                    for (NodeIndex u : g.neighbors(frontier[i])) {
                        if (removed[u]) continue;
                        if (deg[u].fetch_sub(1, std::memory_order_relaxed) == k + 1) local.push_back(u);
                    }
                }
#pragma omp critical
                next.insert(next.end(), local.begin(), local.end());
            }
            remaining -= fsize;
            frontier.swap(next);
        }
    }
    return core;
}

EndpointMoments endpoint_moments(const Graph& g) {
    const auto n = static_cast<std::int64_t>(g.num_nodes());
    std::uint64_t count = 0, sum = 0, sum_sq = 0, sum_product = 0;
#pragma omp parallel for reduction(+ : count, sum, sum_sq, sum_product) schedule(dynamic, 256)
    for (std::int64_t ui = 0; ui < n; ++ui) {
        const auto u = static_cast<NodeIndex>(ui);
        const std::uint64_t du = g.degree(u);
        std::uint64_t neighbor_degrees = 0;
        for (NodeIndex v : g.neighbors(u)) neighbor_degrees += g.degree(v);
        count += du;
        sum += du * du;
        sum_sq += du * du * du;
        sum_product += du * neighbor_degrees;
    }
    return {count, sum, sum_sq, sum_product};
}

}  // namespace ppiphylo::kernels::parallel
