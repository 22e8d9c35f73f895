#include "ppiphylo/ingest.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "ppiphylo/detail/text.hpp"
#include "ppiphylo/error.hpp"

namespace ppiphylo::ingest {

using detail::parse_int;
using detail::split;
using detail::split_whitespace;
using detail::trim;

namespace {

constexpr std::array<std::string_view, kNumChannels> kChannelNames = {
    "neighborhood", "fusion", "cooccurence", "coexpression",
    "experimental", "database", "textmining",
};

std::string_view taxid_prefix(std::string_view protein) {
    const auto dot = protein.find('.');
    return dot == std::string_view::npos ? std::string_view{} : protein.substr(0, dot);
}

}  // namespace

std::string_view channel_name(Channel c) { return kChannelNames[static_cast<std::size_t>(c)]; }

std::optional<Channel> channel_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNumChannels; ++i)
        if (kChannelNames[i] == name) return static_cast<Channel>(i);
    return std::nullopt;
}

EvidenceFilter EvidenceFilter::defaults() {
    EvidenceFilter f;
    f.require(Channel::experimental);
    f.require(Channel::database);
    return f;
}

EvidenceFilter EvidenceFilter::from_spec(std::string_view channels, int min_combined_score) {
    EvidenceFilter f;
    f.min_combined_score = min_combined_score;
    for (auto token : split(channels, ",")) {
        token = trim(token);
        if (token.empty()) continue;
        auto c = channel_from_name(token);
        if (!c) throw ConfigError("unknown evidence channel '" + std::string(token) + "'");
        f.require(*c);
    }
    f.validate();
    return f;
}

void EvidenceFilter::validate() const {
    if (min_combined_score < 0) throw ConfigError("min_combined_score must be >= 0");
    if (required_channels.none() && min_combined_score <= 0)
        throw ConfigError("evidence filter needs a channel or a positive min_combined_score");
}

bool EvidenceFilter::keeps(std::span<const int, kNumChannels> scores, int combined) const {
    if (combined < min_combined_score) return false;
    if (required_channels.none()) return true;
    for (std::size_t i = 0; i < kNumChannels; ++i)
        if (required_channels.test(i) && scores[i] > 0) return true;
    return false;
}

Graph parse_string_links(std::istream& in, const EvidenceFilter& filter) {
    filter.validate();
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing STRING links header", 1);
    if (split_whitespace(line) != split_whitespace(kStringLinksHeader))
        throw FormatError("unexpected STRING links header: '" + std::string(trim(line)) + "'", 1);

    std::string species;
    std::unordered_map<std::string, NodeIndex> index;
    std::vector<std::string> ids;
    std::vector<Edge> edges;
    auto intern = [&](std::string_view protein) {
        auto [it, inserted] = index.try_emplace(std::string(protein), static_cast<NodeIndex>(ids.size()));
        if (inserted) ids.emplace_back(protein);
        return it->second;
    };

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_whitespace(line);
        if (fields.empty()) continue;
        if (fields.size() != 10)
            throw FormatError("expected 10 fields, found " + std::to_string(fields.size()), line_no);

        std::array<int, kNumChannels> scores{};
        for (std::size_t i = 0; i < kNumChannels; ++i) {
            auto v = parse_int<int>(fields[2 + i]);
            if (!v) throw FormatError("non-integer score '" + std::string(fields[2 + i]) + "'", line_no);
            scores[i] = *v;
        }
        auto combined = parse_int<int>(fields[9]);
        if (!combined) throw FormatError("non-integer score '" + std::string(fields[9]) + "'", line_no);

        for (std::size_t p = 0; p < 2; ++p) {
            const auto taxid = taxid_prefix(fields[p]);
            if (taxid.empty())
                throw FormatError("protein id without taxid prefix: '" + std::string(fields[p]) + "'", line_no);
            if (species.empty()) {
                species = taxid;
            } else if (taxid != species) {
                throw DataError("line " + std::to_string(line_no) + ": mixed taxids " + species + " and " +
                                std::string(taxid));
            }
        }

        if (!filter.keeps(scores, *combined)) continue;
        if (fields[0] == fields[1]) continue;
        edges.emplace_back(intern(fields[0]), intern(fields[1]));
    }

    // Canonical node order: sorted protein ids.
    std::vector<NodeIndex> order(ids.size());
    for (NodeIndex i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return ids[a] < ids[b]; });
    std::vector<NodeIndex> rank(ids.size());
    std::vector<std::string> sorted_ids(ids.size());
    for (NodeIndex r = 0; r < order.size(); ++r) {
        rank[order[r]] = r;
        sorted_ids[r] = std::move(ids[order[r]]);
    }
    for (auto& [u, v] : edges) {
        u = rank[u];
        v = rank[v];
    }
    return Graph::from_edges(std::move(species), std::move(sorted_ids), edges);
}

void write_string_links(std::ostream& out, const Graph& g) {
    out << kStringLinksHeader << '\n';
    for (auto [u, v] : g.edge_list())
        out << g.node_id(u) << ' ' << g.node_id(v) << " 0 0 0 0 1000 0 0 1000\n";
}

std::map<std::string, std::int64_t> parse_pubcount_table(std::istream& in) {
    std::map<std::string, std::int64_t> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto fields = split(text, "\t");
        if (fields.size() != 2) throw FormatError("expected species_id<TAB>count", line_no);
        const auto species = std::string(trim(fields[0]));
        auto count = parse_int<std::int64_t>(trim(fields[1]));
        if (!count) throw FormatError("non-integer count '" + std::string(fields[1]) + "'", line_no);
        auto [it, inserted] = out.insert_or_assign(species, *count);
        if (!inserted) warn("duplicate publication count for species " + species + " (line " +
                            std::to_string(line_no) + "); keeping the last value");
    }
    return out;
}

std::set<std::string> filter_species(const std::map<std::string, std::int64_t>& pubcounts,
                                     std::int64_t threshold) {
    if (threshold < 0) throw DomainError("publication threshold must be >= 0");
    std::set<std::string> out;
    for (const auto& [species, count] : pubcounts)
        if (count > threshold) out.insert(species);
    return out;
}

std::vector<RawLineage> parse_lineage_table(std::istream& in) {
    std::vector<RawLineage> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        if (trim(text).empty() || trim(text).front() == '#') continue;
        const auto tab = text.find('\t');
        if (tab == std::string_view::npos) throw FormatError("expected species_id<TAB>lineage", line_no);
        RawLineage rec;
        rec.species_id = std::string(trim(text.substr(0, tab)));
        if (rec.species_id.empty()) throw FormatError("empty species id", line_no);
        const auto path = trim(text.substr(tab + 1));
        if (path.empty()) throw FormatError("empty lineage for species " + rec.species_id, line_no);
        for (auto name : split(path, ";")) {
            name = trim(name);
            if (name.empty()) throw FormatError("empty name in lineage of " + rec.species_id, line_no);
            rec.path.emplace_back(name);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

// Fields of one `\t|\t`-separated dump record, terminator removed.
std::vector<std::string_view> dump_fields(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.ends_with("\t|")) line.remove_suffix(2);
    return split(line, "\t|\t");
}

struct DumpNode {
    std::string parent;
    std::string rank;
};

}  // namespace

std::vector<RawLineage> parse_taxdump(std::istream& nodes, std::istream& names,
                                      std::span<const std::string> taxids) {
    std::unordered_map<std::string, DumpNode> tree;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(nodes, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = dump_fields(line);
        if (f.size() < 3) throw FormatError("nodes.dmp: expected at least 3 fields", line_no);
        tree[std::string(trim(f[0]))] = DumpNode{std::string(trim(f[1])), std::string(trim(f[2]))};
    }

    std::unordered_map<std::string, std::string> scientific;
    line_no = 0;
    while (std::getline(names, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = dump_fields(line);
        if (f.size() < 4) throw FormatError("names.dmp: expected 4 fields", line_no);
        if (trim(f[3]) == "scientific name") scientific[std::string(trim(f[0]))] = std::string(trim(f[1]));
    }

    std::vector<std::string> requested(taxids.begin(), taxids.end());
    if (requested.empty()) {
        for (const auto& [id, node] : tree)
            if (node.rank == "species") requested.push_back(id);
        std::sort(requested.begin(), requested.end());
    }

    std::vector<RawLineage> out;
    out.reserve(requested.size());
    for (const auto& taxid : requested) {
        RawLineage rec;
        rec.species_id = taxid;
        std::unordered_set<std::string> seen;
        std::string current = taxid;
        while (true) {
            auto it = tree.find(current);
            if (it == tree.end()) {
                throw DataError(current == taxid ? "taxid " + taxid + " not in nodes.dmp"
                                                 : "missing parent record " + current + " in lineage of " + taxid);
            }
            if (!seen.insert(current).second) throw DataError("cycle in parent pointers at taxid " + current);
            auto name = scientific.find(current);
            if (name == scientific.end()) throw DataError("taxid " + current + " has no scientific name");
            rec.path.push_back(name->second);
            rec.ranks.push_back(it->second.rank);
            if (it->second.parent == current) break;
            current = it->second.parent;
        }
        std::reverse(rec.path.begin(), rec.path.end());
        std::reverse(rec.ranks.begin(), rec.ranks.end());
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace ppiphylo::ingest
