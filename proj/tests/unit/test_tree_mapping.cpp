#include <doctest.h>

#include <sstream>

#include "ppiphylo/tree_mapping.hpp"

using namespace ppiphylo;

TEST_CASE("label mapping methods") {
    const std::map<std::string, std::string> names{
        {"1", "Escherichia coli"}, {"2", "Bacillus subtilis"}, {"3", "Thermus thermophilus"}, {"4", "Nobody here"}};
    const std::vector<std::string> labels{"Escherichia_coli", "Firmicutes_Bacillus_subtilis",
                                          "Deinococcus_Thermus_thermophilus", "Aquificae_Thermus_thermophilus"};
    const std::map<std::string, std::vector<std::string>> lineages{
        {"2", {"Bacteria", "Firmicutes"}}, {"3", {"Bacteria", "Deinococcus"}}};
    const auto m = map_tree_labels(names, labels, lineages);
    REQUIRE(m.size() == 4);
    CHECK(m[0] == TreeMappingEntry{"1", "Escherichia_coli", "exact"});
    CHECK(m[1] == TreeMappingEntry{"2", "Firmicutes_Bacillus_subtilis", "lineage"});
    CHECK(m[2] == TreeMappingEntry{"3", "Deinococcus_Thermus_thermophilus", "lineage"});
    CHECK(m[3] == TreeMappingEntry{"4", "", "unmapped"});
}

TEST_CASE("duplicate labels with no lineage evidence are ambiguous") {
    const auto m = map_tree_labels({{"7", "Foo bar"}}, {"X_Foo_bar", "Y_Foo_bar"}, {{"7", {"X", "Y"}}});
    REQUIRE(m.size() == 1);
    CHECK(m[0].method == "ambiguous");
    CHECK(m[0].reference_label.empty());
}

TEST_CASE("mapping TSV round trip") {
    const std::vector<TreeMappingEntry> e{{"1", "A_b", "exact"}, {"2", "", "unmapped"}};
    std::stringstream ss;
    write_mapping_tsv(ss, e);
    CHECK(read_mapping_tsv(ss) == e);
    std::istringstream names("9606\tHomo sapiens\n");
    CHECK(parse_species_names(names).at("9606") == "Homo sapiens");
}
