#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ppiphylo/graph.hpp"

namespace ppiphylo {

inline constexpr std::size_t kNumStats = 19;

/// Column names used in CSV output, in report row order.
inline constexpr std::array<std::string_view, kNumStats> kStatNames = {
    "nodes",
    "edges",
    "average_degree",
    "maximum_degree",
    "density",
    "num_components",
    "max_component_fraction",
    "full_diameter",
    "effective_diameter",
    "global_clustering",
    "clustering_coefficient",
    "star_density_2",
    "star_density_3",
    "gini_degree",
    "edge_entropy",
    "assortative_mixing",
    "kcore_max_k",
    "kcore_nodes",
    "kcore_edges",
};

/// Human-readable labels matching the rows of the predictor report.
inline constexpr std::array<std::string_view, kNumStats> kStatLabels = {
    "Nodes",
    "Edges",
    "Average Degree",
    "Maximum Degree",
    "Density",
    "Number of Components",
    "Maximum Component Size",
    "Full Diameter",
    "Effective Diameter",
    "Global Clustering",
    "Clustering Coefficient",
    "Star Density 2",
    "Star Density 3",
    "Gini Coefficient of Degree Dist.",
    "Edge Entropy",
    "Assortative Mixing",
    "K-cores Maximum Degree",
    "K-cores Maximum Nodes",
    "K-cores Maximum Edges",
};

inline constexpr std::size_t kAssortativityIndex = 15;

/// The whole-graph statistics of one species. Assortativity is empty when
/// endpoint degrees have zero variance.
struct StatVector {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    double average_degree = 0;
    std::uint64_t maximum_degree = 0;
    double density = 0;
    std::uint64_t num_components = 0;
    double max_component_fraction = 0;
    std::uint64_t full_diameter = 0;
    double effective_diameter = 0;
    double global_clustering = 0;
    double clustering_coefficient = 0;
    double star_density_2 = 0;
    double star_density_3 = 0;
    double gini_degree = 0;
    double edge_entropy = 0;
    std::optional<double> assortative_mixing;
    std::uint64_t kcore_max_k = 0;
    std::uint64_t kcore_nodes = 0;
    std::uint64_t kcore_edges = 0;

    /// Field values in kStatNames order.
    std::array<std::optional<double>, kNumStats> values() const;
    /// Inverse of values(); integer fields are rounded.
    static StatVector from_values(const std::array<std::optional<double>, kNumStats>& v);

    friend bool operator==(const StatVector&, const StatVector&) = default;
};

enum class Backend { serial, parallel };

struct StatConfig {
    /// Component sizes up to this get exact all-pairs distances.
    std::uint32_t exact_threshold = 2000;
    /// BFS sources sampled for the effective diameter above the threshold.
    std::uint32_t num_sources = 256;
    std::uint64_t seed = 0;
    double quantile = 0.9;
    Backend backend = Backend::parallel;
};

struct Components {
    std::uint32_t count = 0;
    double max_fraction = 0;
    /// Component label per node, numbered by smallest member.
    std::vector<std::uint32_t> labels;
    /// Members of the largest component, ascending; ties go to the
    /// component holding the smallest node index.
    std::vector<NodeIndex> largest_nodes;
    Graph largest;
};

struct DegreeDistribution {
    std::vector<std::uint32_t> degrees;

    static DegreeDistribution of(const Graph& g);
};

struct KCoreSummary {
    std::uint32_t k = 0;
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;

    friend bool operator==(const KCoreSummary&, const KCoreSummary&) = default;
};

/// All 19 statistics. Throws DomainError on an empty graph.
StatVector compute_stats(const Graph& g, const StatConfig& cfg = {});

Components connected_components(const Graph& g);

/// Exact diameter (hops) of the largest connected component.
std::uint32_t full_diameter(const Graph& g, const StatConfig& cfg = {});

/// Interpolated quantile of pairwise distances in the largest component;
/// exact up to cfg.exact_threshold nodes, source-sampled above.
double effective_diameter(const Graph& g, const StatConfig& cfg = {});

/// Interpolated (linear, "type 7") quantile of a distance histogram where
/// histogram[d] counts pairs at distance d. Returns 0 for an empty histogram.
double histogram_quantile(std::span<const std::uint64_t> histogram, double q);

double global_clustering(const Graph& g, Backend backend = Backend::parallel);
double mean_local_clustering(const Graph& g, Backend backend = Backend::parallel);

/// Sum_v C(deg v, k) / (n * C(n - 1, k)) for k in {2, 3}.
double star_density(const Graph& g, unsigned k);

double degree_gini(const DegreeDistribution& d);
/// Shannon entropy, in bits, of the degree histogram.
double degree_entropy(const DegreeDistribution& d);

/// Newman degree assortativity; empty for zero endpoint-degree variance.
std::optional<double> assortativity(const Graph& g, Backend backend = Backend::parallel);

KCoreSummary max_kcore(const Graph& g, Backend backend = Backend::parallel);

}  // namespace ppiphylo
