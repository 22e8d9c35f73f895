#include "ppiphylo/tree_mapping.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include "ppiphylo/detail/text.hpp"
#include "ppiphylo/error.hpp"

namespace ppiphylo {

namespace {

std::vector<std::string> tokens(const std::string& label) {
    std::string s = label;
    std::replace(s.begin(), s.end(), '_', ' ');
    std::vector<std::string> out;
    for (auto t : detail::split_whitespace(s)) out.emplace_back(t);
    return out;
}

struct Candidate {
    std::string label;
    bool exact = false;
    std::size_t overlap = 0;
};

}  // namespace

std::vector<TreeMappingEntry> map_tree_labels(
    const std::map<std::string, std::string>& scientific_names,
    const std::vector<std::string>& reference_labels,
    const std::map<std::string, std::vector<std::string>>& lineages) {
    std::vector<std::vector<std::string>> label_tokens;
    label_tokens.reserve(reference_labels.size());
    for (const auto& l : reference_labels) label_tokens.push_back(tokens(l));

    std::vector<TreeMappingEntry> out;
    for (const auto& [species, name] : scientific_names) {
        const auto name_tokens = tokens(name);
        std::set<std::string> lineage_words;
        if (auto it = lineages.find(species); it != lineages.end())
            for (const auto& element : it->second)
                for (auto& t : tokens(element)) lineage_words.insert(t);

        std::vector<Candidate> candidates;
        for (std::size_t i = 0; i < reference_labels.size(); ++i) {
            const auto& lt = label_tokens[i];
            if (name_tokens.empty() || lt.size() < name_tokens.size()) continue;
            const auto extra = lt.size() - name_tokens.size();
            if (!std::equal(name_tokens.begin(), name_tokens.end(), lt.begin() + static_cast<std::ptrdiff_t>(extra)))
                continue;
            Candidate c{reference_labels[i], extra == 0, 0};
            bool prefix_in_lineage = true;
            for (std::size_t k = 0; k < extra; ++k) {
                if (lineage_words.count(lt[k]))
                    ++c.overlap;
                else
                    prefix_in_lineage = false;
            }
            if (c.exact || prefix_in_lineage) candidates.push_back(std::move(c));
        }

        TreeMappingEntry entry{species, "", "unmapped"};
        if (!candidates.empty()) {
            // Exact matches outrank lineage-prefixed ones; then more overlap.
            auto key = [](const Candidate& c) { return std::make_pair(c.exact ? 1 : 0, c.overlap); };
            std::stable_sort(candidates.begin(), candidates.end(),
                             [&](const Candidate& a, const Candidate& b) { return key(a) > key(b); });
            if (candidates.size() > 1 && key(candidates[0]) == key(candidates[1])) {
                entry.method = "ambiguous";
            } else {
                entry.reference_label = candidates[0].label;
                entry.method = candidates[0].exact ? "exact" : "lineage";
            }
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::map<std::string, std::string> parse_species_names(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto tab = text.find('\t');
        if (tab == std::string_view::npos) throw FormatError("expected species_id<TAB>name", line_no);
        out[std::string(detail::trim(text.substr(0, tab)))] = std::string(detail::trim(text.substr(tab + 1)));
    }
    return out;
}

void write_mapping_tsv(std::ostream& out, const std::vector<TreeMappingEntry>& entries) {
    for (const auto& e : entries) out << e.string_id << '\t' << e.reference_label << '\t' << e.method << '\n';
}

std::vector<TreeMappingEntry> read_mapping_tsv(std::istream& in) {
    std::vector<TreeMappingEntry> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto f = detail::split(line, "\t");
        if (f.size() != 3) throw FormatError("expected string_id<TAB>hug_name<TAB>method", line_no);
        out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2])});
    }
    return out;
}

}  // namespace ppiphylo
