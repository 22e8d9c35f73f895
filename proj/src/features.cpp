#include "ppiphylo/features.hpp"

#include <cmath>
#include <ostream>

#include "ppiphylo/error.hpp"

namespace ppiphylo {

std::array<double, kNumFeatures> FeatureVector::values() const {
    std::array<double, kNumFeatures> out{};
    for (std::size_t i = 0; i < kNumStats; ++i) {
        out[i] = siblings.means[i];
        out[kNumStats + i] = cousins.means[i];
    }
    return out;
}

std::vector<std::string> feature_names() {
    std::vector<std::string> out;
    for (auto n : kStatNames) out.push_back("sib_" + std::string(n));
    for (auto n : kStatNames) out.push_back("cuz_" + std::string(n));
    return out;
}

FeatureAssembler::FeatureAssembler(const PhyloTree& tree, const StatTable& stats, std::set<std::string> train)
    : tree_(tree), stats_(stats), train_(std::move(train)) {
    std::array<double, kNumStats> sum{};
    std::array<std::size_t, kNumStats> count{};
    for (const auto& species : train_) {
        auto it = stats_.find(species);
        if (it == stats_.end()) throw DataError("no statistics for training species " + species);
        const auto v = it->second.values();
        for (std::size_t i = 0; i < kNumStats; ++i)
            if (v[i]) {
                sum[i] += *v[i];
                ++count[i];
            }
    }
    for (std::size_t i = 0; i < kNumStats; ++i) global_[i] = count[i] ? sum[i] / static_cast<double>(count[i]) : 0.0;
}

RelativeMeans FeatureAssembler::mean_over(const RelativeSet& set) const {
    RelativeMeans out;
    out.count = set.members.size();
    if (set.members.empty()) {
        out.means = global_;
        out.fallback = true;
        return out;
    }
    std::array<double, kNumStats> sum{};
    std::array<std::size_t, kNumStats> count{};
    for (const auto& species : set.members) {
        auto it = stats_.find(species);
        if (it == stats_.end()) throw DataError("no statistics for training species " + species);
        const auto v = it->second.values();
        for (std::size_t i = 0; i < kNumStats; ++i)
            if (v[i]) {
                sum[i] += *v[i];
                ++count[i];
            }
    }
    for (std::size_t i = 0; i < kNumStats; ++i)
        out.means[i] = count[i] ? sum[i] / static_cast<double>(count[i]) : global_[i];
    return out;
}

RelativeMeans FeatureAssembler::siblings(const std::string& species) const {
    return mean_over(tree_.siblings(species, train_));
}

RelativeMeans FeatureAssembler::cousins(const std::string& species) const {
    return mean_over(tree_.cousins(species, train_));
}

FeatureVector FeatureAssembler::assemble(const std::string& species) const {
    return {siblings(species), cousins(species)};
}

RelativeMeans sibling_features(const PhyloTree& tree, const StatTable& stats, const std::string& species,
                               const std::set<std::string>& train) {
    return FeatureAssembler(tree, stats, train).siblings(species);
}

RelativeMeans cousin_features(const PhyloTree& tree, const StatTable& stats, const std::string& species,
                              const std::set<std::string>& train) {
    return FeatureAssembler(tree, stats, train).cousins(species);
}

Standardizer::Standardizer(std::vector<double> means, std::vector<double> stds)
    : means_(std::move(means)), stds_(std::move(stds)) {
    if (means_.size() != stds_.size()) throw DomainError("standardizer means and stds differ in length");
}

Standardizer Standardizer::fit(std::span<const std::vector<double>> rows) {
    if (rows.size() < 2) throw DomainError("standardizer needs at least two rows");
    const auto dim = rows[0].size();
    std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
    for (const auto& r : rows) {
        if (r.size() != dim) throw DomainError("ragged feature matrix");
        for (std::size_t j = 0; j < dim; ++j) mean[j] += r[j];
    }
    const double n = static_cast<double>(rows.size());
    for (auto& m : mean) m /= n;
    for (const auto& r : rows)
        for (std::size_t j = 0; j < dim; ++j) sd[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
    for (std::size_t j = 0; j < dim; ++j) {
        sd[j] = std::sqrt(sd[j] / n);
        // Spread below rounding noise of the mean counts as constant.
        if (sd[j] <= 1e-12 * std::max(1.0, std::abs(mean[j]))) sd[j] = 0.0;
    }
    return Standardizer(std::move(mean), std::move(sd));
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
    if (row.size() != means_.size()) throw DomainError("feature dimension mismatch in standardizer");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = stds_[j] > 0 ? (row[j] - means_[j]) / stds_[j] : 0.0;
    return out;
}

void write_feature_csv(std::ostream& out, const std::vector<std::pair<std::string, FeatureVector>>& rows) {
    out << "species_id";
    for (const auto& n : feature_names()) out << ',' << n;
    out << ",n_siblings,n_cousins,flags\n";
    for (const auto& [species, fv] : rows) {
        out << species;
        for (double v : fv.values()) out << ',' << format_real(v);
        out << ',' << fv.siblings.count << ',' << fv.cousins.count << ',';
        if (fv.siblings.fallback) out << "sibling_fallback";
        if (fv.siblings.fallback && fv.cousins.fallback) out << '|';
        if (fv.cousins.fallback) out << "cousin_fallback";
        out << '\n';
    }
}

}  // namespace ppiphylo
