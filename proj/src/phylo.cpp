#include "ppiphylo/phylo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ppiphylo/detail/text.hpp"
#include "ppiphylo/error.hpp"

namespace ppiphylo {

namespace {

bool is_label_char(char c) {
    switch (c) {
        case '(': case ')': case ',': case ':': case ';': case '[': case ']': case '\'':
        case ' ': case '\t': case '\n': case '\r':
            return false;
        default:
            return true;
    }
}

class NewickParser {
public:
    explicit NewickParser(std::string_view text) : text_(text) {}

    std::vector<PhyloNode> parse() {
        std::vector<TreeIndex> open;
        bool expect_node = true;
        while (true) {
            skip_ignorable();
            if (expect_node) {
                if (peek() == '(') {
                    const auto node = add_node(open);
                    open.push_back(node);
                    ++pos_;
                    continue;
                }
                const auto node = add_node(open);
                read_label_and_length(node);
                expect_node = false;
                continue;
            }
            const char c = peek();
            if (c == ',') {
                if (open.empty()) fail("',' outside parentheses");
                ++pos_;
                expect_node = true;
            } else if (c == ')') {
                if (open.empty()) fail("unbalanced ')'");
                const auto node = open.back();
                open.pop_back();
                ++pos_;
                read_label_and_length(node);
            } else if (c == ';') {
                if (!open.empty()) fail("unbalanced '(' at end of tree");
                ++pos_;
                skip_ignorable();
                if (pos_ != text_.size()) fail("trailing characters after ';'");
                return std::move(nodes_);
            } else if (c == '\0') {
                fail(open.empty() ? "missing terminating ';'" : "unbalanced '(' at end of input");
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError("newick: " + what + " at offset " + std::to_string(pos_));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ignorable() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos_;
            } else if (c == '[') {
                const auto close = text_.find(']', pos_);
                if (close == std::string_view::npos) fail("unterminated comment");
                pos_ = close + 1;
            } else {
                break;
            }
        }
    }

    TreeIndex add_node(const std::vector<TreeIndex>& open) {
        const TreeIndex idx = nodes_.size();
        nodes_.emplace_back();
        if (!open.empty()) {
            nodes_[idx].parent = open.back();
            nodes_[open.back()].children.push_back(idx);
        } else if (idx != 0) {
            fail("more than one root");
        }
        return idx;
    }

    void read_label_and_length(TreeIndex node) {
        skip_ignorable();
        if (peek() == '\'') {
            std::string label;
            ++pos_;
            while (true) {
                if (pos_ >= text_.size()) fail("unterminated quoted label");
                if (text_[pos_] == '\'') {
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
                        label += '\'';
                        pos_ += 2;
                        continue;
                    }
                    ++pos_;
                    break;
                }
                label += text_[pos_++];
            }
            nodes_[node].name = std::move(label);
        } else {
            const auto start = pos_;
            while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
            if (pos_ > start) nodes_[node].name = std::string(text_.substr(start, pos_ - start));
        }
        skip_ignorable();
        if (peek() == ':') {
            ++pos_;
            skip_ignorable();
            const auto start = pos_;
            while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
            const auto token = text_.substr(start, pos_ - start);
            auto value = detail::parse_double(token);
            if (!value || !std::isfinite(*value)) {
                pos_ = start;
                fail("invalid branch length '" + std::string(token) + "'");
            }
            if (*value < 0) {
                pos_ = start;
                fail("negative branch length " + std::string(token));
            }
            nodes_[node].branch_length = *value;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<PhyloNode> nodes_;
};

std::string quote_label(const std::string& label) {
    const bool plain = !label.empty() && std::all_of(label.begin(), label.end(), is_label_char);
    if (plain) return label;
    std::string out = "'";
    for (char c : label) {
        if (c == '\'') out += '\'';
        out += c;
    }
    out += '\'';
    return out;
}

}  // namespace

PhyloTree PhyloTree::parse_newick(std::string_view text) {
    PhyloTree t;
    t.nodes_ = NewickParser(text).parse();
    t.root_ = 0;
    t.index();
    return t;
}

void PhyloTree::index() {
    const auto n = nodes_.size();
    depth_.assign(n, 0);
    leaf_begin_.assign(n, 0);
    leaf_end_.assign(n, 0);
    leaf_order_.clear();
    leaf_index_.clear();

    // Iterative DFS so deep caterpillar trees cannot overflow the stack.
    std::vector<std::pair<TreeIndex, std::size_t>> stack{{root_, 0}};
    leaf_begin_[root_] = 0;
    while (!stack.empty()) {
        auto& [node, next_child] = stack.back();
        const auto& rec = nodes_[node];
        if (rec.children.empty()) {
            if (!rec.name || rec.name->empty()) throw FormatError("newick: leaf without a name");
            if (!leaf_index_.emplace(*rec.name, node).second)
                throw DataError("newick: duplicate leaf name '" + *rec.name + "'");
            leaf_begin_[node] = leaf_order_.size();
            leaf_order_.push_back(node);
            leaf_end_[node] = leaf_order_.size();
            stack.pop_back();
            continue;
        }
        if (next_child == 0) leaf_begin_[node] = leaf_order_.size();
        if (next_child < rec.children.size()) {
            const auto child = rec.children[next_child++];
            depth_[child] = depth_[node] + 1;
            stack.emplace_back(child, 0);
        } else {
            leaf_end_[node] = leaf_order_.size();
            stack.pop_back();
        }
    }
}

std::string PhyloTree::to_newick() const {
    std::string out;
    std::vector<std::pair<TreeIndex, std::size_t>> stack{{root_, 0}};
    auto close_node = [&](TreeIndex node) {
        const auto& rec = nodes_[node];
        if (rec.name) out += quote_label(*rec.name);
        if (rec.branch_length) {
            out += ':';
            out += detail::format_shortest(*rec.branch_length);
        }
    };
    while (!stack.empty()) {
        auto& [node, next_child] = stack.back();
        const auto& rec = nodes_[node];
        if (rec.children.empty()) {
            close_node(node);
            stack.pop_back();
            continue;
        }
        if (next_child == 0) out += '(';
        if (next_child < rec.children.size()) {
            if (next_child > 0) out += ',';
            const auto child = rec.children[next_child++];
            stack.emplace_back(child, 0);
        } else {
            out += ')';
            close_node(node);
            stack.pop_back();
        }
    }
    out += ';';
    return out;
}

TreeIndex PhyloTree::leaf(const std::string& species) const {
    auto it = leaf_index_.find(species);
    if (it == leaf_index_.end()) throw LookupError("species '" + species + "' is not a leaf of the tree");
    return it->second;
}

std::vector<std::string> PhyloTree::leaves() const {
    std::vector<std::string> out;
    out.reserve(leaf_order_.size());
    for (auto idx : leaf_order_) out.push_back(*nodes_[idx].name);
    return out;
}

std::string PhyloTree::edge_label(TreeIndex child) const {
    auto label = [&](TreeIndex i) {
        return nodes_[i].name ? *nodes_[i].name : "#" + std::to_string(i);
    };
    return label(*nodes_[child].parent) + " -> " + label(child);
}

double PhyloTree::root_distance(const std::string& species, DistanceMode mode) const {
    TreeIndex node = leaf(species);
    if (mode == DistanceMode::hops) return static_cast<double>(depth_[node]);
    double total = 0;
    while (nodes_[node].parent) {
        if (!nodes_[node].branch_length)
            throw DataError("branch length missing on edge " + edge_label(node));
        total += *nodes_[node].branch_length;
        node = *nodes_[node].parent;
    }
    return total;
}

RelativeSet PhyloTree::siblings(const std::string& species, const std::set<std::string>& universe) const {
    RelativeSet out;
    const TreeIndex self = leaf(species);
    for (auto ancestor = nodes_[self].parent; ancestor; ancestor = nodes_[*ancestor].parent) {
        for (auto i = leaf_begin_[*ancestor]; i < leaf_end_[*ancestor]; ++i) {
            const auto& name = *nodes_[leaf_order_[i]].name;
            if (leaf_order_[i] != self && universe.count(name)) out.members.push_back(name);
        }
        if (!out.members.empty()) {
            std::sort(out.members.begin(), out.members.end());
            return out;
        }
    }
    out.empty_fallback = true;
    return out;
}

RelativeSet PhyloTree::cousins(const std::string& species, const std::set<std::string>& universe) const {
    RelativeSet out;
    const TreeIndex self = leaf(species);
    const auto target = depth_[self];
    std::map<std::size_t, std::vector<std::string>> by_depth;
    for (const auto& name : universe) {
        if (name == species) continue;
        auto it = leaf_index_.find(name);
        if (it == leaf_index_.end()) continue;
        by_depth[depth_[it->second]].push_back(name);
    }
    if (by_depth.empty()) {
        out.empty_fallback = true;
        return out;
    }
    // Ascending map order makes the shallower depth win ties.
    auto best = by_depth.begin();
    auto gap = [&](std::size_t d) { return d > target ? d - target : target - d; };
    for (auto it = by_depth.begin(); it != by_depth.end(); ++it)
        if (gap(it->first) < gap(best->first)) best = it;
    out.members = std::move(best->second);
    return out;
}

}  // namespace ppiphylo
