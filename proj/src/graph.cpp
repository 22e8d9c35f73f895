#include "ppiphylo/graph.hpp"

#include <algorithm>

#include "ppiphylo/error.hpp"

namespace ppiphylo {

Graph Graph::from_edges(std::string species_id, std::vector<std::string> node_ids,
                        std::span<const Edge> edges) {
    const auto n = static_cast<NodeIndex>(node_ids.size());
    std::vector<std::uint64_t> degree(n + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
        if (u == v) continue;
        ++degree[u];
        ++degree[v];
    }

    Graph g;
    g.species_id_ = std::move(species_id);
    g.node_ids_ = std::move(node_ids);
    g.offsets_.assign(n + 1, 0);
    for (NodeIndex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];

    std::vector<NodeIndex> raw(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        if (u == v) continue;
        raw[cursor[u]++] = v;
        raw[cursor[v]++] = u;
    }

    // Sort and dedup each row, then compact.
    std::vector<std::uint64_t> offsets(n + 1, 0);
    std::uint64_t out = 0;
    for (NodeIndex v = 0; v < n; ++v) {
        auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        for (auto it = first; it != last; ++it) raw[out++] = *it;
        offsets[v + 1] = out;
    }
    raw.resize(out);
    g.offsets_ = std::move(offsets);
    g.neighbors_ = std::move(raw);
    return g;
}

Graph Graph::from_edges(NodeIndex num_nodes, std::span<const Edge> edges) {
    std::vector<std::string> ids;
    ids.reserve(num_nodes);
    for (NodeIndex v = 0; v < num_nodes; ++v) ids.push_back(std::to_string(v));
    return from_edges("", std::move(ids), edges);
}

bool Graph::has_edge(NodeIndex u, NodeIndex v) const noexcept {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (NodeIndex u = 0; u < num_nodes(); ++u)
        for (NodeIndex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced_subgraph(std::span<const NodeIndex> nodes) const {
    constexpr NodeIndex kAbsent = ~NodeIndex{0};
    std::vector<NodeIndex> remap(num_nodes(), kAbsent);
    std::vector<std::string> ids;
    ids.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remap[nodes[i]] = static_cast<NodeIndex>(i);
        ids.push_back(node_ids_[nodes[i]]);
    }
    std::vector<Edge> edges;
    for (NodeIndex u : nodes)
        for (NodeIndex v : neighbors(u))
            if (remap[v] != kAbsent && u < v) edges.emplace_back(remap[u], remap[v]);
    return from_edges(species_id_, std::move(ids), edges);
}

}  // namespace ppiphylo
