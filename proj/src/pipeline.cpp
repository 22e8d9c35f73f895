#include "ppiphylo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "ppiphylo/detail/random.hpp"
#include "ppiphylo/error.hpp"

namespace ppiphylo::pipeline {

using learn::Matrix;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    return m;
}

const StatVector& stats_of(const StatTable& stats, const std::string& species) {
    auto it = stats.find(species);
    if (it == stats.end()) throw DataError("no statistics for species " + species);
    return it->second;
}

StatPrediction predict_with(const PredictorModel& model, const FeatureAssembler& assembler,
                            const std::string& species) {
    const auto raw = assembler.assemble(species).values();
    const auto x = model.standardizer.apply(raw);
    StatPrediction out;
    for (std::size_t i = 0; i < kNumStats; ++i)
        if (model.regressors[i]) out[i] = model.regressors[i]->decision(x);
    return out;
}

}  // namespace

Split split_train_test(std::vector<std::string> species, double fraction, std::uint64_t seed) {
    if (species.size() < 5) throw DomainError("train/test split needs at least 5 species");
    if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("train fraction must lie in (0, 1)");
    std::sort(species.begin(), species.end());
    if (std::adjacent_find(species.begin(), species.end()) != species.end())
        throw DataError("duplicate species in split input");
    detail::Rng rng(seed);
    detail::shuffle(std::span<std::string>(species), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(species.size())));
    Split out;
    out.train.assign(species.begin(), species.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.assign(species.begin() + static_cast<std::ptrdiff_t>(n_train), species.end());
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

PredictorModel train_predictor(const PhyloTree& tree, const StatTable& stats, const std::set<std::string>& train,
                               const learn::SvmParams& params) {
    if (train.size() < 2) throw DomainError("predictor needs at least two training species");
    PredictorModel model;
    model.train = train;
    model.params = params;
    const FeatureAssembler assembler(tree, stats, train);

    std::vector<std::string> order(train.begin(), train.end());
    std::vector<std::vector<double>> raw;
    raw.reserve(order.size());
    for (const auto& s : order) {
        const auto v = assembler.assemble(s).values();
        raw.emplace_back(v.begin(), v.end());
    }
    model.standardizer = Standardizer::fit(raw);
    std::vector<std::vector<double>> z;
    z.reserve(raw.size());
    for (const auto& r : raw) z.push_back(model.standardizer.apply(r));

#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < kNumStats; ++i) {
        std::vector<std::vector<double>> rows;
        std::vector<double> targets;
        for (std::size_t r = 0; r < order.size(); ++r) {
            const auto v = stats.at(order[r]).values()[i];
            if (!v) continue;
            rows.push_back(z[r]);
            targets.push_back(*v);
        }
        if (rows.size() < 2) {
            warn("no regressor for " + std::string(kStatNames[i]) + ": fewer than two defined training targets");
            continue;
        }
        model.regressors[i] = learn::train_svr(to_matrix(rows, kNumFeatures), targets, params);
    }
    return model;
}

StatPrediction predict_stats(const PredictorModel& model, const PhyloTree& tree, const StatTable& stats,
                             const std::string& species) {
    const FeatureAssembler assembler(tree, stats, model.train);
    return predict_with(model, assembler, species);
}

PredictorResult evaluate_predictor(const PredictorModel& model, const PhyloTree& tree, const StatTable& stats,
                                   const std::vector<std::string>& test) {
    const FeatureAssembler assembler(tree, stats, model.train);
    PredictorResult out;
    out.report.test_size = test.size();
    std::array<std::vector<double>, kNumStats> errors;
    for (const auto& species : test) {
        const auto predicted = predict_with(model, assembler, species);
        out.predictions[species] = predicted;
        const auto actual = stats_of(stats, species).values();
        for (std::size_t i = 0; i < kNumStats; ++i) {
            std::optional<double> err;
            if (predicted[i] && actual[i]) err = learn::relative_error(*predicted[i], *actual[i]);
            if (err)
                errors[i].push_back(*err);
            else
                ++out.report.rows[i].excluded;
        }
    }
    std::size_t zero_actuals = 0;
    for (std::size_t i = 0; i < kNumStats; ++i) {
        auto& row = out.report.rows[i];
        zero_actuals += row.excluded;
        row.n = errors[i].size();
        if (row.n == 0) continue;
        const double n = static_cast<double>(row.n);
        row.mean_relative_error = std::accumulate(errors[i].begin(), errors[i].end(), 0.0) / n;
        double var = 0;
        for (double e : errors[i]) var += (e - row.mean_relative_error) * (e - row.mean_relative_error);
        row.std_relative_error = std::sqrt(var / n);
    }
    if (zero_actuals > 0)
        warn(std::to_string(zero_actuals) + " (species, statistic) pairs with zero or undefined actual values "
             "were excluded from relative error");
    return out;
}

PredictorResult run_predictor(const PhyloTree& tree, const StatTable& stats, const std::vector<std::string>& train,
                              const std::vector<std::string>& test, const learn::SvmParams& params) {
    const std::set<std::string> train_set(train.begin(), train.end());
    for (const auto& s : test)
        if (train_set.count(s)) throw DataError("species " + s + " is in both train and test sets");
    const auto model = train_predictor(tree, stats, train_set, params);
    return evaluate_predictor(model, tree, stats, test);
}

void write_predictor_report(std::ostream& out, const PredictorReport& report) {
    out << "statistic,mean_relative_error,std_relative_error,n,excluded\n";
    for (std::size_t i = 0; i < kNumStats; ++i) {
        const auto& r = report.rows[i];
        out << kStatLabels[i] << ',' << format_real(r.mean_relative_error) << ','
            << format_real(r.std_relative_error) << ',' << r.n << ',' << r.excluded << '\n';
    }
}

void write_predictions(std::ostream& out, const std::map<std::string, StatPrediction>& predictions) {
    out << "species_id";
    for (auto n : kStatNames) out << ',' << n;
    out << '\n';
    for (const auto& [species, p] : predictions) {
        out << species;
        for (const auto& v : p) out << ',' << format_optional(v);
        out << '\n';
    }
}

// ---------------------------------------------------------------------------

std::vector<double> stat_features(const StatVector& s, const std::array<double, kNumStats>& impute) {
    const auto v = s.values();
    std::vector<double> out(kNumStats);
    for (std::size_t i = 0; i < kNumStats; ++i) out[i] = v[i] ? *v[i] : impute[i];
    return out;
}

HierarchyModel train_hierarchy(const TaxonomyTree& taxonomy, const StatTable& stats,
                               const std::vector<std::string>& train, const learn::SvmParams& params) {
    HierarchyModel model;
    model.taxonomy = taxonomy;
    model.params = params;

    std::vector<std::string> species(train.begin(), train.end());
    std::sort(species.begin(), species.end());
    species.erase(std::unique(species.begin(), species.end()), species.end());
    if (species.size() < 2) throw ConfigError("hierarchy needs at least two training species");

    std::array<double, kNumStats> sum{};
    std::array<std::size_t, kNumStats> count{};
    for (const auto& s : species) {
        if (!taxonomy.contains(s)) throw DataError("training species " + s + " has no six-rank lineage");
        const auto v = stats_of(stats, s).values();
        for (std::size_t i = 0; i < kNumStats; ++i)
            if (v[i]) {
                sum[i] += *v[i];
                ++count[i];
            }
    }
    for (std::size_t i = 0; i < kNumStats; ++i) model.impute[i] = count[i] ? sum[i] / static_cast<double>(count[i]) : 0.0;

    std::vector<std::vector<double>> raw;
    for (const auto& s : species) raw.push_back(stat_features(stats.at(s), model.impute));
    model.standardizer = Standardizer::fit(raw);

    // Training species routed through each (node, child).
    const auto& nodes = taxonomy.nodes();
    std::map<TaxonIndex, std::map<TaxonIndex, std::vector<std::size_t>>> routed;
    for (std::size_t r = 0; r < species.size(); ++r) {
        const auto path = taxonomy.node_path(species[r]);
        for (std::size_t level = 0; level + 1 < path.size(); ++level) routed[path[level]][path[level + 1]].push_back(r);
    }

    std::vector<TaxonIndex> to_train;
    for (TaxonIndex idx = 0; idx < nodes.size(); ++idx) {
        const auto& node = nodes[idx];
        if (node.rank == Rank::family) continue;
        HierarchyNode decision;
        std::vector<TaxonIndex> eligible;
        for (auto child : node.children) {
            const auto n = routed[idx][child].size();
            decision.training_counts[nodes[child].name] = n;
            if (n >= kMinSpeciesPerClass)
                eligible.push_back(child);
            else if (node.children.size() > 1)
                decision.excluded_children.push_back(nodes[child].name);
        }
        if (node.children.size() == 1) {
            decision.kind = NodeKind::pass_through;
            decision.pass_to = node.children.front();
        } else if (eligible.size() >= 2) {
            decision.kind = NodeKind::classifier;
            to_train.push_back(idx);
        } else if (eligible.size() == 1) {
            decision.kind = NodeKind::pass_through;
            decision.pass_to = eligible.front();
            decision.reason = "only one child has enough training species";
        } else {
            decision.kind = NodeKind::untrainable;
            decision.reason = "no child has " + std::to_string(kMinSpeciesPerClass) + " or more training species";
        }
        model.nodes.emplace(idx, std::move(decision));
    }
    if (model.nodes.at(taxonomy.root()).kind == NodeKind::untrainable)
        throw ConfigError("root of the taxonomy is untrainable: " + model.nodes.at(taxonomy.root()).reason);

    std::vector<learn::MulticlassModel> trained(to_train.size());
    const auto jobs = static_cast<std::int64_t>(to_train.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t j = 0; j < jobs; ++j) {
        const auto idx = to_train[static_cast<std::size_t>(j)];
        std::vector<std::vector<double>> rows;
        std::vector<std::string> labels;
        for (const auto& [child, members] : routed[idx]) {
            if (members.size() < kMinSpeciesPerClass) continue;
            for (auto r : members) {
                rows.push_back(model.standardizer.apply(raw[r]));
                labels.push_back(nodes[child].name);
            }
        }
        trained[static_cast<std::size_t>(j)] = learn::train_svc(to_matrix(rows, kNumStats), labels, params);
    }
    for (std::size_t j = 0; j < to_train.size(); ++j) model.nodes.at(to_train[j]).classifier = std::move(trained[j]);
    return model;
}

namespace {

// Child chosen at `node`, or empty when the node is untrainable.
std::optional<TaxonIndex> decide(const HierarchyModel& m, TaxonIndex node, std::span<const double> z) {
    const auto& d = m.nodes.at(node);
    switch (d.kind) {
        case NodeKind::pass_through:
            return d.pass_to;
        case NodeKind::classifier:
            return m.taxonomy.child_named(node, learn::predict_svc(*d.classifier, z));
        case NodeKind::untrainable:
            break;
    }
    return std::nullopt;
}

}  // namespace

PredictedLineage predict_lineage(const HierarchyModel& m, const StatVector& x) {
    const auto z = m.standardizer.apply(stat_features(x, m.impute));
    PredictedLineage out;
    TaxonIndex node = m.taxonomy.root();
    const auto& nodes = m.taxonomy.nodes();
    while (nodes[node].rank != Rank::family) {
        const auto next = decide(m, node, z);
        if (!next) {
            out.truncated = true;
            break;
        }
        node = *next;
        out.path.entries.emplace_back(*nodes[node].rank, nodes[node].name);
    }
    return out;
}

double LineageReport::weighted_node_accuracy(Rank level) const {
    double num = 0, den = 0;
    for (const auto& n : nodes) {
        if (n.level != level || n.evaluated == 0) continue;
        num += n.accuracy() * n.mean_training_size;
        den += n.mean_training_size;
    }
    return den > 0 ? num / den : 0.0;
}

LineageReport evaluate_lineage(const TaxonomyTree& taxonomy, const StatTable& stats, std::size_t k,
                               const learn::SvmParams& params, std::uint64_t seed) {
    std::vector<std::string> species;
    for (const auto& [s, node] : taxonomy.species_assignments())
        if (stats.count(s)) species.push_back(s);
    if (species.size() < k) throw DomainError("fewer species with lineage and statistics than folds");
    const auto folds = learn::kfold_split(species.size(), k, seed);
    const auto& nodes = taxonomy.nodes();

    struct Accum {
        double training_sum = 0;
        std::size_t folds = 0;
        std::size_t evaluated = 0;
        std::size_t correct = 0;
        NodeKind kind = NodeKind::classifier;
    };
    std::map<TaxonIndex, Accum> accum;
    LineageReport report;
    report.species = species.size();

    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::string> train;
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f)
                for (auto i : folds[g]) train.push_back(species[i]);
        const auto model = train_hierarchy(taxonomy, stats, train, params);

        for (const auto& [idx, d] : model.nodes) {
            if (d.kind == NodeKind::untrainable) continue;
            auto& a = accum[idx];
            a.kind = d.kind;
            std::size_t used = 0;
            for (const auto& [child, n] : d.training_counts)
                if (d.kind == NodeKind::pass_through || n >= kMinSpeciesPerClass) used += n;
            a.training_sum += static_cast<double>(used);
            ++a.folds;
        }

        for (auto i : folds[f]) {
            const auto& s = species[i];
            const auto& x = stats.at(s);
            const auto truth = taxonomy.node_path(s);
            const auto z = model.standardizer.apply(stat_features(x, model.impute));
            for (std::size_t level = 0; level + 1 < truth.size(); ++level) {
                const auto& d = model.nodes.at(truth[level]);
                if (d.kind == NodeKind::untrainable) continue;
                auto& a = accum[truth[level]];
                ++a.evaluated;
                if (decide(model, truth[level], z) == truth[level + 1]) ++a.correct;
            }
            const auto predicted = predict_lineage(model, x);
            bool ok = true;
            for (std::size_t level = 0; level < kNumRanks; ++level) {
                ok = ok && level < predicted.path.size() &&
                     predicted.path.entries[level].second == nodes[truth[level + 1]].name;
                if (ok) ++report.cumulative_correct[level];
            }
            if (ok) ++report.full_lineage_correct;
        }
    }

    for (const auto& [idx, a] : accum) {
        if (a.folds == 0) continue;
        NodeAccuracy n;
        n.node = idx;
        n.name = nodes[idx].name;
        n.level = nodes[idx].rank ? static_cast<Rank>(static_cast<int>(*nodes[idx].rank) + 1) : Rank::domain;
        n.kind = a.kind;
        n.mean_training_size = a.training_sum / static_cast<double>(a.folds);
        n.evaluated = a.evaluated;
        n.correct = a.correct;
        report.nodes.push_back(n);
    }
    std::stable_sort(report.nodes.begin(), report.nodes.end(), [&](const NodeAccuracy& a, const NodeAccuracy& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.name < b.name;
    });
    return report;
}

void write_node_accuracy(std::ostream& out, const LineageReport& report) {
    out << "level,node,kind,mean_training_size,evaluated,correct,accuracy\n";
    for (const auto& n : report.nodes) {
        out << rank_name(n.level) << ',' << n.name << ','
            << (n.kind == NodeKind::classifier ? "classifier" : "pass_through") << ','
            << format_real(n.mean_training_size) << ',' << n.evaluated << ',' << n.correct << ','
            << format_real(n.accuracy()) << '\n';
    }
}

void write_cumulative_accuracy(std::ostream& out, const LineageReport& report) {
    out << "level,cumulative_accuracy,correct,species,weighted_node_accuracy\n";
    for (std::size_t level = 0; level < kNumRanks; ++level) {
        out << kRankNames[level] << ',' << format_real(report.cumulative_accuracy(level)) << ','
            << report.cumulative_correct[level] << ',' << report.species << ','
            << format_real(report.weighted_node_accuracy(static_cast<Rank>(level))) << '\n';
    }
}

// ---------------------------------------------------------------------------

double between_group_variance(const std::vector<double>& values, const std::vector<std::size_t>& groups,
                              std::size_t num_groups) {
    std::vector<double> sum(num_groups, 0.0);
    std::vector<std::size_t> count(num_groups, 0);
    double total = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum[groups[i]] += values[i];
        ++count[groups[i]];
        total += values[i];
    }
    const double n = static_cast<double>(values.size());
    const double mean = total / n;
    double bgv = 0;
    for (std::size_t g = 0; g < num_groups; ++g) {
        if (count[g] == 0) continue;
        const double d = sum[g] / static_cast<double>(count[g]) - mean;
        bgv += static_cast<double>(count[g]) * d * d;
    }
    return bgv / n;
}

double permutation_test(const std::map<std::string, double>& values, const std::map<std::string, std::string>& groups,
                        std::size_t n_perm, std::uint64_t seed) {
    if (n_perm < 99) throw DomainError("permutation test needs at least 99 permutations");
    std::vector<double> v;
    std::vector<std::string> labels;
    for (const auto& [species, value] : values) {
        auto it = groups.find(species);
        if (it == groups.end()) continue;
        v.push_back(value);
        labels.push_back(it->second);
    }
    std::vector<std::string> distinct(labels.begin(), labels.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) throw DomainError("permutation test needs at least two nonempty groups");
    std::vector<std::size_t> g(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        g[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), labels[i]) - distinct.begin());

    const double observed = between_group_variance(v, g, distinct.size());
    // Equal partitions can differ in the last bits through summation order.
    const double threshold = observed - 1e-12 * std::max(1.0, std::abs(observed));
    detail::Rng rng(seed);
    std::size_t at_least = 0;
    for (std::size_t p = 0; p < n_perm; ++p) {
        detail::shuffle(std::span<std::size_t>(g), rng);
        if (between_group_variance(v, g, distinct.size()) >= threshold) ++at_least;
    }
    return static_cast<double>(1 + at_least) / static_cast<double>(n_perm + 1);
}

void emit_figure_data(std::ostream& out, const PhyloTree& tree, const StatTable& stats,
                      const std::map<std::string, std::string>& domains, const WeightedTree* weighted) {
    out << "species_id,domain,root_distance,hop_depth";
    for (auto n : kStatNames) out << ',' << n;
    out << '\n';
    for (const auto& [species, s] : stats) {
        out << species << ',';
        if (auto it = domains.find(species); it != domains.end()) out << it->second;
        out << ',';
        if (!tree.has_leaf(species)) {
            warn("species " + species + " has no position in the tree; distances left empty");
            out << ',';
        } else {
            const double hops = tree.root_distance(species, DistanceMode::hops);
            std::optional<double> dist;
            try {
                if (weighted && weighted->tree) {
                    auto label = weighted->labels.find(species);
                    if (label != weighted->labels.end() && weighted->tree->has_leaf(label->second))
                        dist = weighted->tree->root_distance(label->second, DistanceMode::weighted);
                } else {
                    dist = tree.root_distance(species, DistanceMode::weighted);
                }
            } catch (const DataError&) {
                dist.reset();
            }
            out << format_real(dist.value_or(hops)) << ',' << static_cast<std::uint64_t>(hops);
        }
        for (std::size_t i = 0; const auto& v : s.values()) {
            out << ',';
            if (v) out << ((i == 0 || i == 1 || i == 3 || i == 5 || i == 7 || i >= 16) ? std::to_string(static_cast<std::uint64_t>(*v)) : format_real(*v));
            ++i;
        }
        out << '\n';
    }
}

}  // namespace ppiphylo::pipeline
