#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppiphylo/graph.hpp"
#include "ppiphylo/learn.hpp"
#include "ppiphylo/phylo.hpp"
#include "ppiphylo/stats_io.hpp"
#include "ppiphylo/taxonomy.hpp"

namespace synth {

/// Graph on nodes 0..n-1 from an edge list.
ppiphylo::Graph graph(std::uint32_t n, const std::vector<ppiphylo::Edge>& edges);

/// G(n, p) with a seeded generator.
ppiphylo::Graph random_graph(std::uint32_t n, double p, std::uint64_t seed);

/// True for the statistics stored as integer counts.
bool is_count_field(std::size_t i);

struct Phylogeny {
    std::string newick;
    ppiphylo::PhyloTree tree;
    ppiphylo::StatTable stats;
};

/// Yule tree with `leaves` species named s000, s001, ... Each statistic is a
/// smooth function of hop depth scaled by a small offset shared by the
/// children of the same parent.
Phylogeny phylogeny(std::size_t leaves, std::uint64_t seed);

struct Taxonomy {
    ppiphylo::TaxonomyTree tree;
    ppiphylo::StatTable stats;
    std::vector<ppiphylo::ingest::RawLineage> lineages;
};

/// 3 domains x 2 kingdoms x 2 phyla, one class/order/family below each
/// phylum, `per_family` species each. Each decision is encoded on its own
/// statistic with `separation` sigma between class means.
Taxonomy taxonomy(std::size_t per_family, std::uint64_t seed, double separation = 5.0);

/// StatVector from 19 raw values; count fields are rounded.
ppiphylo::StatVector stat_vector(const std::array<double, ppiphylo::kNumStats>& raw);

struct Labeled {
    ppiphylo::learn::Matrix x;
    std::vector<std::string> y;
    std::size_t informative = 0;
};

/// `informative` columns carry class signal (one class at +shift, the others
/// at -shift, unit noise); `noise` columns after them are standard normal.
Labeled rfe_dataset(std::size_t rows, std::size_t informative, std::size_t noise, std::uint64_t seed,
                    double shift = 1.5);

}  // namespace synth
