#include "ppiphylo/taxonomy.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <variant>

#include "ppiphylo/detail/text.hpp"
#include "ppiphylo/error.hpp"

namespace ppiphylo {

std::string_view rank_name(Rank r) { return kRankNames[static_cast<std::size_t>(r)]; }

std::optional<Rank> rank_from_string(std::string_view s) {
    if (s == "superkingdom") return Rank::domain;
    for (std::size_t i = 0; i < kNumRanks; ++i)
        if (kRankNames[i] == s) return static_cast<Rank>(i);
    return std::nullopt;
}

RankResolver RankResolver::from_table(std::istream& in) {
    RankResolver r;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto tab = text.rfind('\t');
        if (tab == std::string_view::npos) throw FormatError("expected name<TAB>rank", line_no);
        const auto rank_text = detail::trim(text.substr(tab + 1));
        auto rank = rank_from_string(rank_text);
        if (!rank) throw FormatError("unknown rank '" + std::string(rank_text) + "'", line_no);
        r.add(std::string(detail::trim(text.substr(0, tab))), *rank);
    }
    return r;
}

std::optional<Rank> RankResolver::resolve(const std::string& name,
                                          std::optional<std::string_view> source_rank) const {
    if (source_rank) return rank_from_string(*source_rank);
    auto it = table_.find(name);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

TaxonomyTree::TaxonomyTree() { nodes_.push_back({std::string(kRootName), std::nullopt, std::nullopt, {}}); }

std::optional<TaxonIndex> TaxonomyTree::child_named(TaxonIndex parent, const std::string& name) const {
    for (auto c : nodes_[parent].children)
        if (nodes_[c].name == name) return c;
    return std::nullopt;
}

TaxonIndex TaxonomyTree::insert(const std::string& species, const LineagePath& lineage) {
    if (lineage.size() != kNumRanks) throw DomainError("lineage of " + species + " does not have six ranks");
    TaxonIndex node = root();
    for (const auto& [rank, name] : lineage.entries) {
        if (auto existing = child_named(node, name)) {
            node = *existing;
            continue;
        }
        const TaxonIndex idx = nodes_.size();
        nodes_.push_back({name, rank, node, {}});
        nodes_[node].children.push_back(idx);
        node = idx;
    }
    assignments_[species] = node;
    return node;
}

std::vector<TaxonIndex> TaxonomyTree::node_path(const std::string& species) const {
    auto it = assignments_.find(species);
    if (it == assignments_.end()) throw LookupError("species '" + species + "' has no taxonomy assignment");
    std::vector<TaxonIndex> path;
    for (std::optional<TaxonIndex> n = it->second; n; n = nodes_[*n].parent) path.push_back(*n);
    std::reverse(path.begin(), path.end());
    return path;
}

LineagePath TaxonomyTree::lineage_of(const std::string& species) const {
    LineagePath out;
    for (auto idx : node_path(species))
        if (nodes_[idx].rank) out.entries.emplace_back(*nodes_[idx].rank, nodes_[idx].name);
    return out;
}

namespace {

std::string describe(const ingest::RawLineage& l) {
    std::string out = l.species_id + ": ";
    for (std::size_t i = 0; i < l.path.size(); ++i) {
        if (i) out += ';';
        out += l.path[i];
    }
    return out;
}

// Ranked entries of a raw path, or the reason it cannot be canonicalized.
std::variant<LineagePath, std::string> canonicalize(const ingest::RawLineage& raw, const RankResolver& resolver) {
    LineagePath path;
    for (std::size_t i = 0; i < raw.path.size(); ++i) {
        std::optional<std::string_view> source_rank;
        if (!raw.ranks.empty()) source_rank = raw.ranks[i];
        if (auto rank = resolver.resolve(raw.path[i], source_rank)) path.entries.emplace_back(*rank, raw.path[i]);
    }
    for (std::size_t i = 0; i < path.entries.size(); ++i) {
        if (i > 0 && path.entries[i].first <= path.entries[i - 1].first)
            return "rank " + std::string(rank_name(path.entries[i].first)) + " out of order or repeated";
    }
    std::array<bool, kNumRanks> present{};
    for (const auto& e : path.entries) present[static_cast<std::size_t>(e.first)] = true;
    for (std::size_t r = 0; r < kNumRanks; ++r)
        if (!present[r]) return "missing " + std::string(kRankNames[r]);
    return path;
}

}  // namespace

TaxonomyBuild build_taxonomy(const std::vector<ingest::RawLineage>& lineages, const RankResolver& resolver) {
    std::vector<const ingest::RawLineage*> ordered;
    ordered.reserve(lineages.size());
    for (const auto& l : lineages) {
        if (!l.ranks.empty() && l.ranks.size() != l.path.size())
            throw DataError("lineage of " + l.species_id + " has mismatched rank annotations");
        ordered.push_back(&l);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->species_id < b->species_id; });

    TaxonomyBuild out;
    // (rank, name) -> (parent name, first lineage that placed it there)
    std::map<std::pair<Rank, std::string>, std::pair<std::string, const ingest::RawLineage*>> placed;
    const ingest::RawLineage* previous = nullptr;
    for (const auto* raw : ordered) {
        if (previous && previous->species_id == raw->species_id) {
            if (previous->path != raw->path)
                throw DataError("conflicting lineages for species " + raw->species_id + "\n  " + describe(*previous) +
                                "\n  " + describe(*raw));
            continue;
        }
        previous = raw;
        auto canon = canonicalize(*raw, resolver);
        if (auto* reason = std::get_if<std::string>(&canon)) {
            out.rejected.push_back({raw->species_id, *reason});
            continue;
        }
        const auto& path = std::get<LineagePath>(canon);
        std::string parent_name(TaxonomyTree::kRootName);
        for (const auto& [rank, name] : path.entries) {
            auto [it, inserted] = placed.try_emplace({rank, name}, parent_name, raw);
            if (!inserted && it->second.first != parent_name)
                throw DataError(std::string(rank_name(rank)) + " '" + name + "' has conflicting parents '" +
                                it->second.first + "' and '" + parent_name + "'\n  " +
                                describe(*it->second.second) + "\n  " + describe(*raw));
            parent_name = name;
        }
        out.tree.insert(raw->species_id, path);
    }
    return out;
}

void write_canonical_taxonomy(std::ostream& out, const TaxonomyTree& tree) {
    for (const auto& [species, node] : tree.species_assignments()) {
        out << species;
        for (const auto& [rank, name] : tree.lineage_of(species).entries) out << '\t' << name;
        out << '\n';
    }
}

std::vector<ingest::RawLineage> read_canonical_taxonomy(std::istream& in) {
    std::vector<ingest::RawLineage> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty() || line.front() == '#') continue;
        const auto f = detail::split(line, "\t");
        if (f.size() != kNumRanks + 1) throw FormatError("expected species_id and six rank columns", line_no);
        ingest::RawLineage rec;
        rec.species_id = std::string(detail::trim(f[0]));
        for (std::size_t r = 0; r < kNumRanks; ++r) {
            const auto name = detail::trim(f[r + 1]);
            if (name.empty()) throw FormatError("empty " + std::string(kRankNames[r]) + " name", line_no);
            rec.path.emplace_back(name);
            rec.ranks.emplace_back(kRankNames[r]);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace ppiphylo
