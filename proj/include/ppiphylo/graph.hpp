#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ppiphylo {

using NodeIndex = std::uint32_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

/// Immutable simple undirected graph in CSR form.
///
/// Neighbor lists are sorted ascending, contain no self-loops and no
/// duplicates, and adjacency is symmetric. Node indices are dense 0..n-1 and
/// map one-to-one onto `node_ids`.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an arbitrary edge list. Self-loops are dropped and
    /// parallel edges (in either orientation) collapse to one.
    static Graph from_edges(std::string species_id, std::vector<std::string> node_ids,
                            std::span<const Edge> edges);

    /// Convenience for tests and generators: node ids are "0".."n-1".
    static Graph from_edges(NodeIndex num_nodes, std::span<const Edge> edges);

    const std::string& species_id() const noexcept { return species_id_; }
    const std::vector<std::string>& node_ids() const noexcept { return node_ids_; }
    const std::string& node_id(NodeIndex v) const { return node_ids_[v]; }

    NodeIndex num_nodes() const noexcept { return static_cast<NodeIndex>(node_ids_.size()); }
    std::uint64_t num_edges() const noexcept { return neighbors_.size() / 2; }
    bool empty() const noexcept { return node_ids_.empty(); }

    std::uint32_t degree(NodeIndex v) const noexcept {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const NodeIndex> neighbors(NodeIndex v) const noexcept {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    bool has_edge(NodeIndex u, NodeIndex v) const noexcept;

    /// Each undirected edge once, as (u, v) with u < v, in CSR order.
    std::vector<Edge> edge_list() const;

    /// Subgraph induced by `nodes`; node i of the result is nodes[i].
    Graph induced_subgraph(std::span<const NodeIndex> nodes) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::string species_id_;
    std::vector<std::string> node_ids_;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<NodeIndex> neighbors_;
};

}  // namespace ppiphylo
