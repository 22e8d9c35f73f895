#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ppiphylo {

using TreeIndex = std::size_t;

struct PhyloNode {
    std::optional<std::string> name;
    std::optional<TreeIndex> parent;
    std::vector<TreeIndex> children;
    std::optional<double> branch_length;
};

enum class DistanceMode { hops, weighted };

/// A set of related species plus whether it had to fall back to nothing.
struct RelativeSet {
    std::vector<std::string> members;  // sorted
    bool empty_fallback = false;
};

/// Rooted species tree. Every leaf is named by a unique species id;
/// internal nodes may be unnamed. Immutable after parsing.
class PhyloTree {
public:
    /// Throws FormatError with the character offset on malformed input and
    /// DataError on duplicate or missing leaf names.
    static PhyloTree parse_newick(std::string_view text);

    /// Canonical Newick: children in stored order, lengths in shortest
    /// round-trip form, labels quoted only when needed.
    std::string to_newick() const;

    const std::vector<PhyloNode>& nodes() const noexcept { return nodes_; }
    TreeIndex root() const noexcept { return root_; }
    std::size_t num_leaves() const noexcept { return leaf_index_.size(); }
    bool has_leaf(const std::string& species) const { return leaf_index_.count(species) != 0; }
    /// Throws LookupError for an unknown species.
    TreeIndex leaf(const std::string& species) const;
    /// Leaf species ids in depth-first order.
    std::vector<std::string> leaves() const;
    std::size_t depth(TreeIndex node) const { return depth_[node]; }

    /// Hops or summed branch lengths from the root. Weighted mode throws
    /// DataError naming the first edge that lacks a length.
    double root_distance(const std::string& species, DistanceMode mode) const;

    /// Members of `universe` under the nearest ancestor of `species` whose
    /// subtree holds another universe member. `species` is never included.
    RelativeSet siblings(const std::string& species, const std::set<std::string>& universe) const;

    /// Members of `universe` at the hop depth of `species`, widening to the
    /// nearest populated depth (ties: shallower) when none exist.
    RelativeSet cousins(const std::string& species, const std::set<std::string>& universe) const;

private:
    void index();
    std::string edge_label(TreeIndex child) const;

    std::vector<PhyloNode> nodes_;
    TreeIndex root_ = 0;
    std::unordered_map<std::string, TreeIndex> leaf_index_;
    std::vector<std::size_t> depth_;
    // Leaves in DFS order; node i covers leaf_order_[leaf_begin_[i], leaf_end_[i]).
    std::vector<TreeIndex> leaf_order_;
    std::vector<std::size_t> leaf_begin_, leaf_end_;
};

}  // namespace ppiphylo
