#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppiphylo/features.hpp"
#include "ppiphylo/learn.hpp"
#include "ppiphylo/phylo.hpp"
#include "ppiphylo/stats_io.hpp"
#include "ppiphylo/taxonomy.hpp"
#include "ppiphylo/tree_mapping.hpp"

namespace ppiphylo::pipeline {

// ---------------------------------------------------------------------------
// Train/test split

struct Split {
    std::vector<std::string> train;  // sorted
    std::vector<std::string> test;   // sorted
};

/// Seeded shuffle; |train| = round(fraction * n). Needs n >= 5.
Split split_train_test(std::vector<std::string> species, double fraction, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Statistic predictor

/// One regressor per statistic over standardized sibling + cousin features.
/// A statistic with no usable training targets has no regressor.
struct PredictorModel {
    std::set<std::string> train;
    Standardizer standardizer;
    std::array<std::optional<learn::LinearModel>, kNumStats> regressors;
    learn::SvmParams params;
};

using StatPrediction = std::array<std::optional<double>, kNumStats>;

struct PredictorRow {
    double mean_relative_error = 0;
    double std_relative_error = 0;
    std::size_t n = 0;
    /// Test species whose actual value is 0 or undefined.
    std::size_t excluded = 0;
};

struct PredictorReport {
    std::array<PredictorRow, kNumStats> rows{};
    std::size_t test_size = 0;
};

struct PredictorResult {
    PredictorReport report;
    std::map<std::string, StatPrediction> predictions;
};

PredictorModel train_predictor(const PhyloTree& tree, const StatTable& stats, const std::set<std::string>& train,
                               const learn::SvmParams& params);

/// Predicted statistics for `species` from its training-set relatives.
StatPrediction predict_stats(const PredictorModel& model, const PhyloTree& tree, const StatTable& stats,
                             const std::string& species);

/// Relative errors of the model on `test` (population standard deviation).
PredictorResult evaluate_predictor(const PredictorModel& model, const PhyloTree& tree, const StatTable& stats,
                                   const std::vector<std::string>& test);

PredictorResult run_predictor(const PhyloTree& tree, const StatTable& stats, const std::vector<std::string>& train,
                              const std::vector<std::string>& test, const learn::SvmParams& params);

/// `statistic,mean_relative_error,std_relative_error,n,excluded`, one row
/// per statistic in report order.
void write_predictor_report(std::ostream& out, const PredictorReport& report);
/// `species_id,<19 statistics>` predicted values.
void write_predictions(std::ostream& out, const std::map<std::string, StatPrediction>& predictions);

// ---------------------------------------------------------------------------
// Hierarchical lineage classifier

enum class NodeKind { classifier, pass_through, untrainable };

struct HierarchyNode {
    NodeKind kind = NodeKind::untrainable;
    /// Labels are child taxon names.
    std::optional<learn::MulticlassModel> classifier;
    std::optional<TaxonIndex> pass_to;
    std::string reason;
    /// Training species per child name.
    std::map<std::string, std::size_t> training_counts;
    /// Children left out for having fewer than two training species.
    std::vector<std::string> excluded_children;
};

struct HierarchyModel {
    TaxonomyTree taxonomy;
    Standardizer standardizer;
    /// Training means used in place of undefined statistics.
    std::array<double, kNumStats> impute{};
    std::map<TaxonIndex, HierarchyNode> nodes;
    learn::SvmParams params;
};

/// Minimum training species for a child to become a class label.
inline constexpr std::size_t kMinSpeciesPerClass = 2;

/// Throws ConfigError when the root cannot be trained.
HierarchyModel train_hierarchy(const TaxonomyTree& taxonomy, const StatTable& stats,
                               const std::vector<std::string>& train, const learn::SvmParams& params);

struct PredictedLineage {
    LineagePath path;
    /// Descent stopped at an untrainable node before the family rank.
    bool truncated = false;
};

/// Raw statistics vector with undefined entries imputed.
std::vector<double> stat_features(const StatVector& s, const std::array<double, kNumStats>& impute);

PredictedLineage predict_lineage(const HierarchyModel& m, const StatVector& x);

struct NodeAccuracy {
    TaxonIndex node = 0;
    std::string name;
    /// Rank the node's decision assigns (domain for the root).
    Rank level = Rank::domain;
    NodeKind kind = NodeKind::classifier;
    double mean_training_size = 0;
    std::size_t evaluated = 0;
    std::size_t correct = 0;

    double accuracy() const { return evaluated ? static_cast<double>(correct) / static_cast<double>(evaluated) : 0.0; }
};

struct LineageReport {
    std::vector<NodeAccuracy> nodes;
    std::size_t species = 0;
    /// Species whose predictions match truth at every level <= L.
    std::array<std::size_t, kNumRanks> cumulative_correct{};
    std::size_t full_lineage_correct = 0;

    double cumulative_accuracy(std::size_t level) const {
        return species ? static_cast<double>(cumulative_correct[level]) / static_cast<double>(species) : 0.0;
    }
    /// Training-size weighted mean of node accuracies at a level.
    double weighted_node_accuracy(Rank level) const;
};

/// k-fold cross-validation over all species with both a lineage and
/// statistics; each fold serves once as the test set.
LineageReport evaluate_lineage(const TaxonomyTree& taxonomy, const StatTable& stats, std::size_t k,
                               const learn::SvmParams& params, std::uint64_t seed);

/// `level,node,kind,mean_training_size,evaluated,correct,accuracy`.
void write_node_accuracy(std::ostream& out, const LineageReport& report);
/// `level,cumulative_accuracy,correct,species,weighted_node_accuracy`.
void write_cumulative_accuracy(std::ostream& out, const LineageReport& report);

// ---------------------------------------------------------------------------
// Exploratory analyses

/// Between-group variance sum_g n_g (mean_g - mean)^2 / n.
double between_group_variance(const std::vector<double>& values, const std::vector<std::size_t>& groups,
                              std::size_t num_groups);

/// Label-permutation test of group dependence for species present in both
/// maps. p = (1 + #{perm >= observed}) / (n_perm + 1).
double permutation_test(const std::map<std::string, double>& values, const std::map<std::string, std::string>& groups,
                        std::size_t n_perm, std::uint64_t seed);

/// Optional second tree carrying branch lengths, reached through a
/// species-to-label mapping.
struct WeightedTree {
    const PhyloTree* tree = nullptr;
    std::map<std::string, std::string> labels;
};

/// One row per species with statistics, sorted by id:
/// `species_id,domain,root_distance,hop_depth,<19 statistics>`.
/// root_distance falls back to hops where no weighted path exists.
void emit_figure_data(std::ostream& out, const PhyloTree& tree, const StatTable& stats,
                      const std::map<std::string, std::string>& domains, const WeightedTree* weighted = nullptr);

}  // namespace ppiphylo::pipeline
