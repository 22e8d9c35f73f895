#include "ppiphylo/model_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "ppiphylo/error.hpp"

namespace ppiphylo::model_io {

using nlohmann::json;
using namespace learn;

namespace {

constexpr const char* kFormat = "ppiphylo-model";

json params_json(const SvmParams& p) {
    return {{"C", p.C}, {"epsilon", p.epsilon}, {"max_iters", p.max_iters}, {"tolerance", p.tolerance}, {"seed", p.seed}};
}

SvmParams params_from(const json& j) {
    SvmParams p;
    p.C = j.at("C").get<double>();
    p.epsilon = j.at("epsilon").get<double>();
    p.max_iters = j.at("max_iters").get<std::uint64_t>();
    p.tolerance = j.at("tolerance").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

json linear_json(const LinearModel& m) {
    return {{"kind", m.kind == ModelKind::classifier ? "classifier" : "regressor"},
            {"weights", m.weights},
            {"bias", m.bias},
            {"epsilon", m.epsilon},
            {"hyperparams", params_json(m.params)},
            {"training", {{"iterations", m.trace.iterations}, {"converged", m.trace.converged}, {"kkt_gap", m.trace.kkt_gap}}}};
}

LinearModel linear_from(const json& j) {
    LinearModel m;
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "classifier" && kind != "regressor") throw FormatError("unknown linear model kind " + kind);
    m.kind = kind == "classifier" ? ModelKind::classifier : ModelKind::regressor;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.epsilon = j.at("epsilon").get<double>();
    m.params = params_from(j.at("hyperparams"));
    const auto& t = j.at("training");
    m.trace.iterations = t.at("iterations").get<std::uint64_t>();
    m.trace.converged = t.at("converged").get<bool>();
    m.trace.kkt_gap = t.at("kkt_gap").get<double>();
    return m;
}

json multiclass_json(const MulticlassModel& m) {
    json per_class = json::array();
    for (const auto& c : m.per_class) per_class.push_back(linear_json(c));
    return {{"labels", m.labels}, {"per_class", per_class}};
}

MulticlassModel multiclass_from(const json& j) {
    MulticlassModel m;
    m.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& c : j.at("per_class")) m.per_class.push_back(linear_from(c));
    if (m.labels.size() != m.per_class.size()) throw FormatError("label and classifier counts differ");
    return m;
}

json standardizer_json(const Standardizer& s) { return {{"means", s.means()}, {"stds", s.stds()}}; }

Standardizer standardizer_from(const json& j) {
    auto means = j.at("means").get<std::vector<double>>();
    auto stds = j.at("stds").get<std::vector<double>>();
    if (means.size() != stds.size()) throw FormatError("standardizer means and stds differ in length");
    return Standardizer(std::move(means), std::move(stds));
}

json header(const char* kind) { return {{"format", kFormat}, {"version", kFormatVersion}, {"kind", kind}}; }

void write(std::ostream& out, const json& j) { out << j.dump(1) << '\n'; }

json read(std::istream& in, const char* kind) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != kFormat) throw FormatError("not a ppiphylo model document");
    if (j.value("version", 0) != kFormatVersion)
        throw FormatError("unsupported model version " + j.value("version", json()).dump());
    if (j.value("kind", "") != kind)
        throw FormatError("expected a " + std::string(kind) + " model, found " + j.value("kind", json()).dump());
    return j;
}

// Field access errors surface as FormatError.
template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model document: ") + e.what());
    }
}

std::vector<std::string> stat_feature_names() { return {kStatNames.begin(), kStatNames.end()}; }

json node_key(const TaxonomyTree& t, TaxonIndex idx) {
    std::vector<std::string> names;
    for (auto i = std::optional<TaxonIndex>(idx); i && *i != t.root(); i = t.nodes()[*i].parent)
        names.push_back(t.nodes()[*i].name);
    return json(std::vector<std::string>(names.rbegin(), names.rend()));
}

TaxonIndex node_from_key(const TaxonomyTree& t, const json& key) {
    TaxonIndex idx = t.root();
    for (const auto& name : key) {
        const auto next = t.child_named(idx, name.get<std::string>());
        if (!next) throw FormatError("model refers to unknown taxon " + key.dump());
        idx = *next;
    }
    return idx;
}

}  // namespace

void save_linear(std::ostream& out, const LinearModel& m) {
    auto j = header("linear");
    j["model"] = linear_json(m);
    write(out, j);
}

LinearModel load_linear(std::istream& in) {
    const auto j = read(in, "linear");
    return guarded([&] { return linear_from(j.at("model")); });
}

void save_multiclass(std::ostream& out, const MulticlassModel& m) {
    auto j = header("multiclass");
    j["model"] = multiclass_json(m);
    write(out, j);
}

MulticlassModel load_multiclass(std::istream& in) {
    const auto j = read(in, "multiclass");
    return guarded([&] { return multiclass_from(j.at("model")); });
}

void save_predictor(std::ostream& out, const pipeline::PredictorModel& m) {
    auto j = header("predictor");
    j["feature_names"] = feature_names();
    j["hyperparams"] = params_json(m.params);
    j["train"] = std::vector<std::string>(m.train.begin(), m.train.end());
    j["standardizer"] = standardizer_json(m.standardizer);
    json regressors = json::object();
    for (std::size_t i = 0; i < kNumStats; ++i)
        regressors[std::string(kStatNames[i])] = m.regressors[i] ? linear_json(*m.regressors[i]) : json();
    j["regressors"] = regressors;
    write(out, j);
}

pipeline::PredictorModel load_predictor(std::istream& in) {
    const auto j = read(in, "predictor");
    return guarded([&] {
        pipeline::PredictorModel m;
        if (j.at("feature_names").get<std::vector<std::string>>() != feature_names())
            throw FormatError("predictor feature names do not match this build");
        m.params = params_from(j.at("hyperparams"));
        for (const auto& s : j.at("train")) m.train.insert(s.get<std::string>());
        m.standardizer = standardizer_from(j.at("standardizer"));
        if (m.standardizer.dimension() != kNumFeatures) throw FormatError("predictor standardizer has wrong dimension");
        const auto& r = j.at("regressors");
        for (std::size_t i = 0; i < kNumStats; ++i) {
            const auto& entry = r.at(std::string(kStatNames[i]));
            if (!entry.is_null()) m.regressors[i] = linear_from(entry);
        }
        return m;
    });
}

void save_hierarchy(std::ostream& out, const pipeline::HierarchyModel& m) {
    auto j = header("hierarchy");
    j["feature_names"] = stat_feature_names();
    j["hyperparams"] = params_json(m.params);
    j["standardizer"] = standardizer_json(m.standardizer);
    j["impute"] = m.impute;

    json lineages = json::object();
    for (const auto& [species, node] : m.taxonomy.species_assignments()) {
        (void)node;
        json path = json::array();
        for (const auto& [rank, name] : m.taxonomy.lineage_of(species).entries) path.push_back(name);
        lineages[species] = path;
    }
    j["taxonomy"] = lineages;

    json nodes = json::array();
    for (const auto& [idx, d] : m.nodes) {
        json n = {{"path", node_key(m.taxonomy, idx)}, {"reason", d.reason},
                  {"training_counts", d.training_counts}, {"excluded_children", d.excluded_children}};
        switch (d.kind) {
            case pipeline::NodeKind::classifier:
                n["kind"] = "classifier";
                n["classifier"] = multiclass_json(*d.classifier);
                break;
            case pipeline::NodeKind::pass_through:
                n["kind"] = "pass_through";
                n["pass_to"] = m.taxonomy.nodes()[*d.pass_to].name;
                break;
            case pipeline::NodeKind::untrainable:
                n["kind"] = "untrainable";
                break;
        }
        nodes.push_back(std::move(n));
    }
    j["nodes"] = nodes;
    write(out, j);
}

pipeline::HierarchyModel load_hierarchy(std::istream& in) {
    const auto j = read(in, "hierarchy");
    return guarded([&] {
        pipeline::HierarchyModel m;
        if (j.at("feature_names").get<std::vector<std::string>>() != stat_feature_names())
            throw FormatError("hierarchy feature names do not match this build");
        m.params = params_from(j.at("hyperparams"));
        m.standardizer = standardizer_from(j.at("standardizer"));
        m.impute = j.at("impute").get<std::array<double, kNumStats>>();
        for (const auto& [species, path] : j.at("taxonomy").items()) {
            if (path.size() != kNumRanks) throw FormatError("lineage of " + species + " does not have six ranks");
            LineagePath lineage;
            for (std::size_t r = 0; r < kNumRanks; ++r)
                lineage.entries.emplace_back(static_cast<Rank>(r), path[r].get<std::string>());
            m.taxonomy.insert(species, lineage);
        }
        for (const auto& n : j.at("nodes")) {
            const auto idx = node_from_key(m.taxonomy, n.at("path"));
            pipeline::HierarchyNode d;
            d.reason = n.at("reason").get<std::string>();
            d.training_counts = n.at("training_counts").get<std::map<std::string, std::size_t>>();
            d.excluded_children = n.at("excluded_children").get<std::vector<std::string>>();
            const auto kind = n.at("kind").get<std::string>();
            if (kind == "classifier") {
                d.kind = pipeline::NodeKind::classifier;
                d.classifier = multiclass_from(n.at("classifier"));
            } else if (kind == "pass_through") {
                d.kind = pipeline::NodeKind::pass_through;
                d.pass_to = m.taxonomy.child_named(idx, n.at("pass_to").get<std::string>());
                if (!d.pass_to) throw FormatError("pass-through target missing from taxonomy");
            } else if (kind == "untrainable") {
                d.kind = pipeline::NodeKind::untrainable;
            } else {
                throw FormatError("unknown hierarchy node kind " + kind);
            }
            m.nodes[idx] = std::move(d);
        }
        for (TaxonIndex i = 0; i < m.taxonomy.nodes().size(); ++i)
            if (m.taxonomy.nodes()[i].rank != Rank::family && !m.nodes.count(i))
                throw FormatError("hierarchy model lacks a decision for " + m.taxonomy.nodes()[i].name);
        return m;
    });
}

}  // namespace ppiphylo::model_io
