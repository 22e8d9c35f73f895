#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ppiphylo {

/// One row of the STRING-id to reference-tree-label audit.
struct TreeMappingEntry {
    std::string string_id;
    std::string reference_label;  // empty when unmapped
    std::string method;           // exact | lineage | ambiguous | unmapped

    friend bool operator==(const TreeMappingEntry&, const TreeMappingEntry&) = default;
};

/// Maps species (id -> scientific name) onto labels of a reference tree.
///
/// Labels are compared after turning underscores into spaces and collapsing
/// runs of whitespace. A label equal to the name is an `exact` match. A
/// label that ends with the name, where every extra leading token appears in
/// the species' lineage, is a `lineage` match. Several equally good
/// candidates are resolved by lineage overlap; remaining ties are
/// `ambiguous`. Output is ordered by species id.
std::vector<TreeMappingEntry> map_tree_labels(
    const std::map<std::string, std::string>& scientific_names,
    const std::vector<std::string>& reference_labels,
    const std::map<std::string, std::vector<std::string>>& lineages);

/// `species_id<TAB>scientific name` lines.
std::map<std::string, std::string> parse_species_names(std::istream& in);

void write_mapping_tsv(std::ostream& out, const std::vector<TreeMappingEntry>& entries);
std::vector<TreeMappingEntry> read_mapping_tsv(std::istream& in);

}  // namespace ppiphylo
