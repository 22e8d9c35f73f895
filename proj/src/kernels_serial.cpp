#include <algorithm>

#include "ppiphylo/kernels.hpp"

namespace ppiphylo::kernels {

void bfs_distances(const Graph& g, NodeIndex source, std::vector<std::uint32_t>& dist,
                   std::vector<NodeIndex>& queue) {
    dist.assign(g.num_nodes(), kUnreached);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeIndex u = queue[head];
        const auto next = dist[u] + 1;
        for (NodeIndex v : g.neighbors(u)) {
            if (dist[v] == kUnreached) {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
}

namespace serial {

// Node iterator: t(v) = 1/2 * sum over neighbors u of |N(u) & N(v)|.
std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
    std::vector<std::uint64_t> tri(g.num_nodes(), 0);
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
        const auto nv = g.neighbors(v);
        std::uint64_t twice = 0;
        for (NodeIndex u : nv) {
            const auto nu = g.neighbors(u);
            auto a = nv.begin();
            auto b = nu.begin();
            while (a != nv.end() && b != nu.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++twice;
                    ++a;
                    ++b;
                }
            }
        }
        tri[v] = twice / 2;
    }
    return tri;
}

BfsSummary bfs_from_sources(const Graph& g, std::span<const NodeIndex> sources) {
    BfsSummary out;
    std::vector<std::uint32_t> dist;
    std::vector<NodeIndex> queue;
    for (NodeIndex s : sources) {
        bfs_distances(g, s, dist, queue);
        for (NodeIndex v : queue) {
            const auto d = dist[v];
            if (d == 0) continue;
            if (out.histogram.size() <= d) out.histogram.resize(d + 1, 0);
            ++out.histogram[d];
            out.max_distance = std::max(out.max_distance, d);
        }
    }
    return out;
}

// Batagelj-Zaversnik bucket peeling, O(n + m).
std::vector<std::uint32_t> core_numbers(const Graph& g) {
    const NodeIndex n = g.num_nodes();
    std::vector<std::uint32_t> deg(n);
    std::uint32_t max_deg = 0;
    for (NodeIndex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<NodeIndex> bin(max_deg + 1, 0);
    for (NodeIndex v = 0; v < n; ++v) ++bin[deg[v]];
    NodeIndex start = 0;
    for (std::uint32_t d = 0; d <= max_deg; ++d) {
        const auto count = bin[d];
        bin[d] = start;
        start += count;
    }
    std::vector<NodeIndex> pos(n), vert(n);
    for (NodeIndex v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (std::uint32_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    if (!bin.empty()) bin[0] = 0;

    for (NodeIndex i = 0; i < n; ++i) {
        const NodeIndex v = vert[i];
        for (NodeIndex u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                const auto du = deg[u];
                const NodeIndex pu = pos[u];
                const NodeIndex pw = bin[du];
                const NodeIndex w = vert[pw];
                if (u != w) {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg;
}

EndpointMoments endpoint_moments(const Graph& g) {
    EndpointMoments m;
    for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
        const std::uint64_t du = g.degree(u);
        for (NodeIndex v : g.neighbors(u)) {
            const std::uint64_t dv = g.degree(v);
            ++m.count;
            m.sum += du;
            m.sum_sq += du * du;
            m.sum_product += du * dv;
        }
    }
    return m;
}

}  // namespace serial
}  // namespace ppiphylo::kernels
