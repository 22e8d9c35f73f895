#pragma once

#include <array>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ppiphylo/graph_stats.hpp"
#include "ppiphylo/phylo.hpp"
#include "ppiphylo/stats_io.hpp"

namespace ppiphylo {

inline constexpr std::size_t kNumFeatures = 2 * kNumStats;

/// Componentwise mean statistics of a set of related species.
struct RelativeMeans {
    std::array<double, kNumStats> means{};
    std::size_t count = 0;
    /// No related species in the training set; means are the global ones.
    bool fallback = false;
};

struct FeatureVector {
    RelativeMeans siblings;
    RelativeMeans cousins;

    /// Sibling means followed by cousin means.
    std::array<double, kNumFeatures> values() const;
};

/// "sib_<stat>" x 19 then "cuz_<stat>" x 19.
std::vector<std::string> feature_names();

/// Builds predictor features for any species from training-set statistics
/// only. Undefined statistics are skipped in each mean; a component with
/// no defined value, or an empty relative set, takes the training mean.
class FeatureAssembler {
public:
    /// Throws DataError when a training species has no statistics.
    FeatureAssembler(const PhyloTree& tree, const StatTable& stats, std::set<std::string> train);

    RelativeMeans siblings(const std::string& species) const;
    RelativeMeans cousins(const std::string& species) const;
    FeatureVector assemble(const std::string& species) const;

    const std::array<double, kNumStats>& global_means() const noexcept { return global_; }
    const std::set<std::string>& train() const noexcept { return train_; }

private:
    RelativeMeans mean_over(const RelativeSet& set) const;

    const PhyloTree& tree_;
    const StatTable& stats_;
    std::set<std::string> train_;
    std::array<double, kNumStats> global_{};
};

RelativeMeans sibling_features(const PhyloTree& tree, const StatTable& stats, const std::string& species,
                               const std::set<std::string>& train);
RelativeMeans cousin_features(const PhyloTree& tree, const StatTable& stats, const std::string& species,
                              const std::set<std::string>& train);

/// Per-column z-scores fitted on a training matrix. Constant columns map
/// to 0.
class Standardizer {
public:
    Standardizer() = default;
    Standardizer(std::vector<double> means, std::vector<double> stds);

    /// Throws DomainError for fewer than two rows or ragged rows.
    static Standardizer fit(std::span<const std::vector<double>> rows);

    std::vector<double> apply(std::span<const double> row) const;
    std::size_t dimension() const noexcept { return means_.size(); }
    const std::vector<double>& means() const noexcept { return means_; }
    /// Population standard deviations; 0 marks a constant column.
    const std::vector<double>& stds() const noexcept { return stds_; }

private:
    std::vector<double> means_;
    std::vector<double> stds_;
};

/// Writes `species_id,sib_*,cuz_*,n_siblings,n_cousins,flags` rows in the
/// given order. `flags` is a '|'-joined subset of sibling_fallback and
/// cousin_fallback.
void write_feature_csv(std::ostream& out, const std::vector<std::pair<std::string, FeatureVector>>& rows);

}  // namespace ppiphylo
