#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fixture {

/// Paths of a small on-disk data set for command line runs.
struct Files {
    std::filesystem::path dir;
    std::vector<std::string> links;  // STRING links files, one species each
    std::string pubcounts;
    std::string tree;           // phylogeny, 60 leaves s000..s059
    std::string stats;          // statistics of the tree leaves
    std::string lineages;       // canonical taxonomy of the tree leaves
    std::string weighted_tree;  // same topology, leaves relabelled Genus_sNNN
    std::string names;          // sNNN -> "Genus sNNN"
    std::string tax_taxonomy;   // canonical taxonomy of the classifier set
    std::string tax_stats;      // statistics of the classifier set
};

/// Writes the fixture under `dir` (created if missing). Deterministic.
Files write(const std::filesystem::path& dir);

/// Runs `bin args` through the shell with stdout/stderr sent to
/// `dir/last.log`. Returns the exit status.
int run(const std::string& bin, const std::string& args, const std::filesystem::path& dir);

std::string slurp(const std::filesystem::path& p);

}  // namespace fixture
