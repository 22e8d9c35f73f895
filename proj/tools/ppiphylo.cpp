// ppiphylo command line: network statistics, feature assembly, the
// statistic predictor, the lineage classifier and supporting analyses.

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppiphylo/detail/text.hpp"
#include "ppiphylo/error.hpp"
#include "ppiphylo/features.hpp"
#include "ppiphylo/graph_stats.hpp"
#include "ppiphylo/ingest.hpp"
#include "ppiphylo/learn.hpp"
#include "ppiphylo/model_io.hpp"
#include "ppiphylo/phylo.hpp"
#include "ppiphylo/pipeline.hpp"
#include "ppiphylo/stats_io.hpp"
#include "ppiphylo/taxonomy.hpp"
#include "ppiphylo/tree_mapping.hpp"

using namespace ppiphylo;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    int threads = 0;
    std::uint32_t exact_threshold = 2000;
    std::string evidence = "experimental,database";
    int min_combined_score = 0;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

std::string slurp(const std::string& path) {
    auto in = open_in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// One id per line; blank lines and '#' comments are ignored.
std::vector<std::string> read_list(const std::string& path) {
    auto in = open_in(path);
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        const auto s = std::string(detail::trim(line));
        if (s.empty() || s[0] == '#') continue;
        if (!seen.insert(s).second) throw DataError("species " + s + " listed twice in " + path);
        out.push_back(s);
    }
    return out;
}

void write_list(const std::string& path, const std::vector<std::string>& ids) {
    auto out = open_out(path);
    for (const auto& s : ids) out << s << '\n';
}

StatTable load_stats(const std::string& path) {
    auto in = open_in(path);
    return read_stats_csv(in);
}

PhyloTree load_tree(const std::string& path) { return PhyloTree::parse_newick(slurp(path)); }

learn::SvmParams svm_params(double c, double epsilon, std::uint64_t seed) {
    if (!(c > 0)) throw ConfigError("C must be positive");
    learn::SvmParams p;
    p.C = c;
    p.epsilon = epsilon;
    p.seed = seed;
    return p;
}

// ---------------------------------------------------------------------------
// Taxonomy inputs shared by several subcommands.

struct TaxonomySource {
    std::string lineages;
    std::string rank_table;
    std::string canonical;
    std::string nodes;
    std::string names;

    void attach(CLI::App* cmd, bool required) {
        auto* g = cmd->add_option_group("taxonomy", "lineage source (choose one)");
        g->add_option("--lineages", lineages, "species_id<TAB>name;name;... table");
        g->add_option("--taxonomy", canonical, "canonical six-rank taxonomy TSV");
        g->add_option("--taxdump-nodes", nodes, "NCBI nodes.dmp");
        cmd->add_option("--taxdump-names", names, "NCBI names.dmp");
        cmd->add_option("--rank-table", rank_table, "name<TAB>rank table for --lineages");
        g->require_option(required ? 1 : 0, 1);
    }

    bool given() const { return !lineages.empty() || !canonical.empty() || !nodes.empty(); }

    std::vector<ingest::RawLineage> raw(const std::vector<std::string>& taxids) const {
        if (!lineages.empty()) {
            auto in = open_in(lineages);
            return ingest::parse_lineage_table(in);
        }
        if (!canonical.empty()) {
            auto in = open_in(canonical);
            return read_canonical_taxonomy(in);
        }
        if (names.empty()) throw ConfigError("--taxdump-nodes needs --taxdump-names");
        auto n = open_in(nodes);
        auto m = open_in(names);
        return ingest::parse_taxdump(n, m, taxids);
    }

    TaxonomyTree build(const std::vector<std::string>& taxids) const {
        RankResolver resolver;
        if (!rank_table.empty()) {
            auto in = open_in(rank_table);
            resolver = RankResolver::from_table(in);
        }
        auto b = build_taxonomy(raw(taxids), resolver);
        if (!b.rejected.empty())
            warn(std::to_string(b.rejected.size()) + " species rejected for an incomplete six-rank lineage (first: " +
                 b.rejected.front().species_id + ", " + b.rejected.front().reason + ")");
        return std::move(b.tree);
    }
};

std::vector<std::string> keys(const StatTable& t) {
    std::vector<std::string> out;
    for (const auto& [k, v] : t) out.push_back(k);
    return out;
}

std::string name_at(const TaxonomyTree& t, const std::string& species, Rank rank) {
    return t.lineage_of(species).entries[static_cast<std::size_t>(rank)].second;
}

Rank parse_rank(const std::string& s) {
    const auto r = rank_from_string(s);
    if (!r) throw ConfigError("unknown rank " + s);
    return *r;
}

// ---------------------------------------------------------------------------
// Subcommands

struct StatsCmd {
    std::vector<std::string> inputs;
    std::string out;
    std::string pubcounts;
    std::int64_t min_publications = 100;
    std::uint32_t num_sources = 256;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("stats", "compute the 19 network statistics of STRING link files");
        c->add_option("inputs", inputs, "STRING detailed links files, one species each")->required();
        c->add_option("-o,--out", out, "statistics CSV")->required();
        c->add_option("--pubcounts", pubcounts, "species_id<TAB>count table; keep species above --min-publications");
        c->add_option("--min-publications", min_publications, "publication threshold (strictly more than)");
        c->add_option("--num-sources", num_sources, "BFS sources for sampled effective diameters");
    }

    void run(const Globals& g) const {
        auto filter = ingest::EvidenceFilter::from_spec(g.evidence, g.min_combined_score);
        filter.validate();
        std::optional<std::set<std::string>> keep;
        if (!pubcounts.empty()) {
            auto in = open_in(pubcounts);
            keep = ingest::filter_species(ingest::parse_pubcount_table(in), min_publications);
        }
        StatConfig cfg;
        cfg.exact_threshold = g.exact_threshold;
        cfg.num_sources = num_sources;
        cfg.seed = g.seed;
        StatTable table;
        for (const auto& path : inputs) {
            auto in = open_in(path);
            const auto graph = ingest::parse_string_links(in, filter);
            if (graph.empty()) {
                warn(path + ": no links pass the evidence filter; species skipped");
                continue;
            }
            if (keep && !keep->count(graph.species_id())) continue;
            if (table.count(graph.species_id())) throw DataError("species " + graph.species_id() + " appears in two input files");
            table.emplace(graph.species_id(), compute_stats(graph, cfg));
        }
        auto o = open_out(out);
        write_stats_csv(o, table);

        std::vector<std::string> channels;
        for (std::size_t i = 0; i < ingest::kNumChannels; ++i)
            if (filter.required_channels.test(i)) channels.emplace_back(ingest::channel_name(static_cast<ingest::Channel>(i)));
        const nlohmann::json meta = {
            {"species", table.size()},
            {"diameter_scope", "largest connected component"},
            {"effective_diameter",
             {{"quantile", cfg.quantile}, {"exact_threshold", cfg.exact_threshold}, {"num_sources", cfg.num_sources},
              {"seed", cfg.seed}}},
            {"edge_entropy", "Shannon entropy in bits of the degree histogram"},
            {"assortative_mixing", "empty when endpoint degrees have zero variance"},
            {"evidence", {{"channels", channels}, {"min_combined_score", filter.min_combined_score}}}};
        auto m = open_out(out + ".meta.json");
        m << meta.dump(2) << '\n';
    }
};

struct FeaturesCmd {
    std::string tree, stats, train, species, out;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("features", "assemble sibling and cousin features");
        c->add_option("--tree", tree, "Newick species tree")->required();
        c->add_option("--stats", stats, "statistics CSV")->required();
        c->add_option("--train", train, "training species list (default: every species with statistics in the tree)");
        c->add_option("--species", species, "species to emit (default: every tree leaf)");
        c->add_option("-o,--out", out, "feature CSV")->required();
    }

    void run(const Globals&) const {
        const auto t = load_tree(tree);
        const auto s = load_stats(stats);
        std::set<std::string> universe;
        if (!train.empty()) {
            for (const auto& x : read_list(train)) universe.insert(x);
        } else {
            for (const auto& [k, v] : s)
                if (t.has_leaf(k)) universe.insert(k);
        }
        const FeatureAssembler assembler(t, s, universe);
        const auto targets = species.empty() ? t.leaves() : read_list(species);
        std::vector<std::pair<std::string, FeatureVector>> rows;
        for (const auto& sp : targets) rows.emplace_back(sp, assembler.assemble(sp));
        auto o = open_out(out);
        write_feature_csv(o, rows);
    }
};

struct PredictTrainCmd {
    std::string tree, stats, train, universe, split_prefix, out;
    double train_fraction = 0;
    double c = 100, epsilon = -1;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("predict-train", "train the per-statistic regressors");
        cmd->add_option("--tree", tree, "Newick species tree")->required();
        cmd->add_option("--stats", stats, "statistics CSV")->required();
        auto* g = cmd->add_option_group("training set");
        g->add_option("--train", train, "training species list");
        g->add_option("--train-fraction", train_fraction, "seeded split of the species universe");
        g->require_option(1);
        cmd->add_option("--species", universe, "species universe for --train-fraction (default: stats species in the tree)");
        cmd->add_option("--split-out", split_prefix, "write <prefix>.train.txt and <prefix>.test.txt");
        cmd->add_option("--C", c, "SVM regularization constant");
        cmd->add_option("--epsilon", epsilon, "tube half-width (default: 0.1 * std of each target)");
        cmd->add_option("-o,--out", out, "model JSON")->required();
    }

    void run(const Globals& g) const {
        const auto t = load_tree(tree);
        const auto s = load_stats(stats);
        std::vector<std::string> train_ids;
        if (!train.empty()) {
            train_ids = read_list(train);
        } else {
            std::vector<std::string> all;
            if (!universe.empty()) {
                all = read_list(universe);
            } else {
                for (const auto& [k, v] : s)
                    if (t.has_leaf(k)) all.push_back(k);
            }
            const auto split = pipeline::split_train_test(all, train_fraction, g.seed);
            train_ids = split.train;
            if (!split_prefix.empty()) {
                write_list(split_prefix + ".train.txt", split.train);
                write_list(split_prefix + ".test.txt", split.test);
            }
        }
        const auto model = pipeline::train_predictor(t, s, {train_ids.begin(), train_ids.end()}, svm_params(c, epsilon, g.seed));
        auto o = open_out(out);
        model_io::save_predictor(o, model);
    }
};

struct PredictEvalCmd {
    std::string model, tree, stats, test, out, predictions;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("predict-eval", "per-statistic relative errors of a trained predictor");
        c->add_option("--model", model, "predictor model JSON")->required();
        c->add_option("--tree", tree, "Newick species tree")->required();
        c->add_option("--stats", stats, "statistics CSV")->required();
        c->add_option("--test", test, "test species list")->required();
        c->add_option("-o,--out", out, "report CSV")->required();
        c->add_option("--predictions", predictions, "per-species predicted statistics CSV");
    }

    void run(const Globals&) const {
        auto in = open_in(model);
        const auto m = model_io::load_predictor(in);
        const auto t = load_tree(tree);
        const auto s = load_stats(stats);
        const auto ids = read_list(test);
        for (const auto& id : ids)
            if (m.train.count(id)) throw DataError("test species " + id + " was used for training");
        const auto r = pipeline::evaluate_predictor(m, t, s, ids);
        auto o = open_out(out);
        pipeline::write_predictor_report(o, r.report);
        if (!predictions.empty()) {
            auto p = open_out(predictions);
            pipeline::write_predictions(p, r.predictions);
        }
    }
};

struct ClassifyTrainCmd {
    TaxonomySource taxonomy;
    std::string stats, train, out;
    double c = 100;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("classify-train", "train the hierarchical lineage classifier");
        taxonomy.attach(cmd, true);
        cmd->add_option("--stats", stats, "statistics CSV")->required();
        cmd->add_option("--train", train, "training species list (default: every species with lineage and statistics)");
        cmd->add_option("--C", c, "SVM regularization constant");
        cmd->add_option("-o,--out", out, "model JSON")->required();
    }

    void run(const Globals& g) const {
        const auto s = load_stats(stats);
        const auto tax = taxonomy.build(keys(s));
        std::vector<std::string> ids;
        if (!train.empty()) {
            ids = read_list(train);
        } else {
            for (const auto& [k, v] : tax.species_assignments())
                if (s.count(k)) ids.push_back(k);
        }
        const auto m = pipeline::train_hierarchy(tax, s, ids, svm_params(c, -1, g.seed));
        auto o = open_out(out);
        model_io::save_hierarchy(o, m);
    }
};

struct ClassifyEvalCmd {
    TaxonomySource taxonomy;
    std::string stats, out_nodes, out_cumulative, model, test, out_predictions;
    std::size_t folds = 5;
    double c = 100;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("classify-eval",
                                       "cross-validated node and cumulative accuracy, or predictions from a saved model");
        taxonomy.attach(cmd, false);
        cmd->add_option("--stats", stats, "statistics CSV")->required();
        cmd->add_option("--folds", folds, "cross-validation folds");
        cmd->add_option("--C", c, "SVM regularization constant");
        cmd->add_option("--out-nodes", out_nodes, "per-node accuracy CSV");
        cmd->add_option("--out-cumulative", out_cumulative, "per-level cumulative accuracy CSV");
        cmd->add_option("--model", model, "saved hierarchy model; predicts --test instead of cross-validating");
        cmd->add_option("--test", test, "species to predict with --model");
        cmd->add_option("--out-predictions", out_predictions, "predicted lineages CSV (with --model)");
    }

    void run(const Globals& g) const {
        const auto s = load_stats(stats);
        if (!model.empty()) {
            if (test.empty() || out_predictions.empty())
                throw ConfigError("--model needs --test and --out-predictions");
            auto in = open_in(model);
            const auto m = model_io::load_hierarchy(in);
            auto o = open_out(out_predictions);
            o << "species_id,truncated";
            for (auto r : kRankNames) o << ',' << r;
            o << ",correct_levels\n";
            for (const auto& id : read_list(test)) {
                auto it = s.find(id);
                if (it == s.end()) throw DataError("no statistics for species " + id);
                const auto p = pipeline::predict_lineage(m, it->second);
                o << id << ',' << (p.truncated ? 1 : 0);
                for (std::size_t r = 0; r < kNumRanks; ++r) o << ',' << (r < p.path.size() ? p.path.entries[r].second : "");
                o << ',';
                if (m.taxonomy.contains(id)) {
                    const auto truth = m.taxonomy.lineage_of(id);
                    std::size_t ok = 0;
                    while (ok < p.path.size() && p.path.entries[ok] == truth.entries[ok]) ++ok;
                    o << ok;
                }
                o << '\n';
            }
            return;
        }
        if (!taxonomy.given()) throw ConfigError("cross-validation needs a lineage source");
        if (out_nodes.empty() && out_cumulative.empty()) throw ConfigError("nothing to write: give --out-nodes or --out-cumulative");
        const auto tax = taxonomy.build(keys(s));
        const auto report = pipeline::evaluate_lineage(tax, s, folds, svm_params(c, -1, g.seed), g.seed);
        if (!out_nodes.empty()) {
            auto o = open_out(out_nodes);
            pipeline::write_node_accuracy(o, report);
        }
        if (!out_cumulative.empty()) {
            auto o = open_out(out_cumulative);
            pipeline::write_cumulative_accuracy(o, report);
        }
    }
};

struct RfeCmd {
    TaxonomySource taxonomy;
    std::string stats, rank = "domain", out;
    std::size_t folds = 5;
    double c = 100;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("rfe", "recursive feature elimination over the 19 statistics");
        taxonomy.attach(cmd, true);
        cmd->add_option("--stats", stats, "statistics CSV")->required();
        cmd->add_option("--rank", rank, "rank whose names are the class labels");
        cmd->add_option("--folds", folds, "cross-validation folds");
        cmd->add_option("--C", c, "SVM regularization constant");
        cmd->add_option("-o,--out", out, "elimination trace CSV")->required();
    }

    void run(const Globals& g) const {
        const auto level = parse_rank(rank);
        const auto s = load_stats(stats);
        const auto tax = taxonomy.build(keys(s));
        std::vector<std::string> ids;
        for (const auto& [k, v] : tax.species_assignments())
            if (s.count(k)) ids.push_back(k);
        if (ids.empty()) throw DataError("no species have both a lineage and statistics");

        std::array<double, kNumStats> mean{};
        std::array<std::size_t, kNumStats> n{};
        for (const auto& id : ids) {
            const auto v = s.at(id).values();
            for (std::size_t i = 0; i < kNumStats; ++i)
                if (v[i]) {
                    mean[i] += *v[i];
                    ++n[i];
                }
        }
        for (std::size_t i = 0; i < kNumStats; ++i) mean[i] = n[i] ? mean[i] / static_cast<double>(n[i]) : 0.0;

        learn::Matrix x(ids.size(), kNumStats);
        std::vector<std::string> y;
        for (std::size_t r = 0; r < ids.size(); ++r) {
            const auto f = pipeline::stat_features(s.at(ids[r]), mean);
            std::copy(f.begin(), f.end(), x.row(r).begin());
            y.push_back(name_at(tax, ids[r], level));
        }
        const auto steps = learn::rfe(x, y, svm_params(c, -1, g.seed), folds, g.seed);
        auto o = open_out(out);
        o << "num_features,cv_accuracy,eliminated\n";
        for (const auto& st : steps)
            o << st.num_features << ',' << format_real(st.cv_accuracy) << ','
              << (st.eliminated ? std::string(kStatNames[*st.eliminated]) : "") << '\n';
    }
};

struct FigureDataCmd {
    TaxonomySource taxonomy;
    std::string tree, stats, weighted_tree, mapping, out;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("figure-data", "per-species root distances, domains and statistics");
        taxonomy.attach(c, false);
        c->add_option("--tree", tree, "Newick species tree")->required();
        c->add_option("--stats", stats, "statistics CSV")->required();
        c->add_option("--weighted-tree", weighted_tree, "reference tree with branch lengths");
        c->add_option("--mapping", mapping, "species to reference label TSV (from map-trees)");
        c->add_option("-o,--out", out, "figure data CSV")->required();
    }

    void run(const Globals&) const {
        const auto t = load_tree(tree);
        const auto s = load_stats(stats);
        std::map<std::string, std::string> domains;
        if (taxonomy.given()) {
            const auto tax = taxonomy.build(keys(s));
            for (const auto& [k, v] : tax.species_assignments()) domains[k] = name_at(tax, k, Rank::domain);
        }
        std::optional<PhyloTree> reference;
        pipeline::WeightedTree weighted;
        if (!weighted_tree.empty()) {
            if (mapping.empty()) throw ConfigError("--weighted-tree needs --mapping");
            reference = load_tree(weighted_tree);
            weighted.tree = &*reference;
            auto in = open_in(mapping);
            for (const auto& e : read_mapping_tsv(in))
                if (!e.reference_label.empty()) weighted.labels[e.string_id] = e.reference_label;
        }
        auto o = open_out(out);
        pipeline::emit_figure_data(o, t, s, domains, reference ? &weighted : nullptr);
    }
};

struct PermtestCmd {
    TaxonomySource taxonomy;
    std::string stats, rank = "domain", out;
    std::vector<std::string> statistics;
    std::size_t permutations = 999;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("permtest", "label-permutation test of statistic dependence on taxonomic group");
        taxonomy.attach(c, true);
        c->add_option("--stats", stats, "statistics CSV")->required();
        c->add_option("--rank", rank, "rank defining the groups");
        c->add_option("--statistic", statistics, "statistic column (repeatable; default: all)");
        c->add_option("--permutations", permutations, "number of label permutations (>= 99)");
        c->add_option("-o,--out", out, "p-value CSV")->required();
    }

    void run(const Globals& g) const {
        const auto level = parse_rank(rank);
        const auto s = load_stats(stats);
        const auto tax = taxonomy.build(keys(s));
        std::vector<std::size_t> columns;
        if (statistics.empty()) {
            for (std::size_t i = 0; i < kNumStats; ++i) columns.push_back(i);
        } else {
            for (const auto& name : statistics) {
                auto it = std::find(kStatNames.begin(), kStatNames.end(), name);
                if (it == kStatNames.end()) throw ConfigError("unknown statistic " + name);
                columns.push_back(static_cast<std::size_t>(it - kStatNames.begin()));
            }
        }
        std::map<std::string, std::string> groups;
        for (const auto& [k, v] : tax.species_assignments())
            if (s.count(k)) groups[k] = name_at(tax, k, level);

        auto o = open_out(out);
        o << "statistic,rank,species,groups,between_group_variance,p_value\n";
        for (auto col : columns) {
            std::map<std::string, double> values;
            std::vector<double> v;
            std::vector<std::size_t> gi;
            std::map<std::string, std::size_t> labels;
            for (const auto& [k, label] : groups)
                if (const auto x = s.at(k).values()[col]) {
                    values[k] = *x;
                    labels.emplace(label, 0);
                }
            std::size_t next = 0;
            for (auto& [label, idx] : labels) idx = next++;
            for (const auto& [k, x] : values) {
                v.push_back(x);
                gi.push_back(labels.at(groups.at(k)));
            }
            const double p = pipeline::permutation_test(values, groups, permutations, g.seed);
            o << kStatNames[col] << ',' << rank_name(level) << ',' << values.size() << ',' << labels.size() << ','
              << format_real(pipeline::between_group_variance(v, gi, labels.size())) << ',' << format_real(p) << '\n';
        }
    }
};

struct MapTreesCmd {
    std::string names, reference, labels, lineages, out;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("map-trees", "map species onto reference tree labels (audit TSV)");
        c->add_option("--names", names, "species_id<TAB>scientific name")->required();
        auto* g = c->add_option_group("reference labels");
        g->add_option("--reference-tree", reference, "Newick reference tree; its leaf labels are used");
        g->add_option("--labels", labels, "one reference label per line");
        g->require_option(1);
        c->add_option("--lineages", lineages, "species_id<TAB>name;name;... used to break ties");
        c->add_option("-o,--out", out, "mapping TSV")->required();
    }

    void run(const Globals&) const {
        auto in = open_in(names);
        const auto sci = parse_species_names(in);
        std::vector<std::string> refs;
        if (!reference.empty()) {
            refs = load_tree(reference).leaves();
        } else {
            auto l = open_in(labels);
            for (std::string line; std::getline(l, line);) {
                const auto s = std::string(detail::trim(line));
                if (!s.empty()) refs.push_back(s);
            }
        }
        std::map<std::string, std::vector<std::string>> paths;
        if (!lineages.empty()) {
            auto l = open_in(lineages);
            for (auto& r : ingest::parse_lineage_table(l)) paths[r.species_id] = std::move(r.path);
        }
        const auto entries = map_tree_labels(sci, refs, paths);
        std::size_t unmapped = 0;
        for (const auto& e : entries) unmapped += e.reference_label.empty();
        if (unmapped) warn(std::to_string(unmapped) + " species left unmapped; they fall back to hop distances");
        auto o = open_out(out);
        write_mapping_tsv(o, entries);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Protein interaction network statistics across the tree of life"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "seed for splits, sampling and folds");
    app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)");
    app.add_option("--exact-threshold", g.exact_threshold, "largest component size with exact distance statistics");
    app.add_option("--evidence", g.evidence, "comma-separated STRING channels that keep a link");
    app.add_option("--min-combined-score", g.min_combined_score, "minimum STRING combined score");

    StatsCmd stats;
    FeaturesCmd features;
    PredictTrainCmd predict_train;
    PredictEvalCmd predict_eval;
    ClassifyTrainCmd classify_train;
    ClassifyEvalCmd classify_eval;
    RfeCmd rfe;
    FigureDataCmd figure_data;
    PermtestCmd permtest;
    MapTreesCmd map_trees;
    stats.attach(app);
    features.attach(app);
    predict_train.attach(app);
    predict_eval.attach(app);
    classify_train.attach(app);
    classify_eval.attach(app);
    rfe.attach(app);
    figure_data.attach(app);
    permtest.attach(app);
    map_trees.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        if (g.threads < 0) throw ConfigError("--threads must be >= 0");
        if (g.threads > 0) omp_set_num_threads(g.threads);
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "stats") stats.run(g);
        else if (name == "features") features.run(g);
        else if (name == "predict-train") predict_train.run(g);
        else if (name == "predict-eval") predict_eval.run(g);
        else if (name == "classify-train") classify_train.run(g);
        else if (name == "classify-eval") classify_eval.run(g);
        else if (name == "rfe") rfe.run(g);
        else if (name == "figure-data") figure_data.run(g);
        else if (name == "permtest") permtest.run(g);
        else if (name == "map-trees") map_trees.run(g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}
