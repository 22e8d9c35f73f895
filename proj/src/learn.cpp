#include "ppiphylo/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ppiphylo/detail/random.hpp"
#include "ppiphylo/error.hpp"
#include "ppiphylo/features.hpp"

namespace ppiphylo::learn {

namespace {

void check_finite(const Matrix& x) {
    for (double v : x.data)
        if (!std::isfinite(v)) throw DomainError("feature matrix contains a non-finite value");
}

svm::SolverOptions solver_options(const SvmParams& p) {
    svm::SolverOptions o;
    o.C = p.C;
    o.tolerance = p.tolerance;
    o.max_iters = p.max_iters;
    o.checkpoint_every = 100;
    return o;
}

TrainingTrace trace_of(svm::SolverResult& r) {
    return {r.iterations, r.converged, r.kkt_gap, std::move(r.objective_trace)};
}

Matrix standardized(const Matrix& x, const Standardizer& z) {
    Matrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const auto row = z.apply(x.row(i));
        std::copy(row.begin(), row.end(), out.row(i).begin());
    }
    return out;
}

Standardizer fit_columns(const Matrix& x) {
    std::vector<std::vector<double>> rows;
    rows.reserve(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) rows.emplace_back(x.row(i).begin(), x.row(i).end());
    return Standardizer::fit(rows);
}

}  // namespace

double LinearModel::decision(std::span<const double> x) const {
    if (x.size() != weights.size()) throw DomainError("feature dimension mismatch");
    double f = bias;
    for (std::size_t j = 0; j < x.size(); ++j) f += weights[j] * x[j];
    return f;
}

std::vector<double> MulticlassModel::decision_values(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(per_class.size());
    for (const auto& m : per_class) out.push_back(m.decision(x));
    return out;
}

LinearModel train_binary_svc(const Matrix& x, std::span<const std::int8_t> y, const SvmParams& params,
                             std::span<const double> gram) {
    if (y.size() != x.rows) throw DomainError("label count does not match rows");
    std::vector<double> own_gram;
    if (gram.empty()) {
        own_gram = svm::gram(x);
        gram = own_gram;
    }
    const std::vector<double> p(x.rows, -1.0);
    auto result = svm::solve(gram, x.rows, y, p, solver_options(params));

    LinearModel m;
    m.kind = ModelKind::classifier;
    m.params = params;
    m.weights.assign(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double coef = result.alpha[i] * y[i];
        if (coef == 0.0) continue;
        const auto row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) m.weights[j] += coef * row[j];
    }
    m.bias = -result.rho;
    m.trace = trace_of(result);
    return m;
}

MulticlassModel train_svc(const Matrix& x, std::span<const std::string> y, const SvmParams& params) {
    if (y.size() != x.rows) throw DomainError("label count does not match rows");
    check_finite(x);
    const std::set<std::string> distinct(y.begin(), y.end());
    if (distinct.size() < 2) throw DegenerateModelError("classifier needs at least two distinct labels");

    MulticlassModel model;
    model.labels.assign(distinct.begin(), distinct.end());
    model.per_class.resize(model.labels.size());
    const auto k = svm::gram(x);
    const auto classes = static_cast<std::int64_t>(model.labels.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < classes; ++c) {
        std::vector<std::int8_t> signs(x.rows);
        for (std::size_t i = 0; i < x.rows; ++i) signs[i] = y[i] == model.labels[static_cast<std::size_t>(c)] ? 1 : -1;
        model.per_class[static_cast<std::size_t>(c)] = train_binary_svc(x, signs, params, k);
    }
    return model;
}

std::string predict_svc(const MulticlassModel& m, std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) throw DomainError("non-finite feature value");
    const auto scores = m.decision_values(x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = c;
    return m.labels[best];
}

LinearModel train_svr(const Matrix& x, std::span<const double> y, const SvmParams& params) {
    if (y.size() != x.rows) throw DomainError("target count does not match rows");
    if (x.rows < 2) throw DomainError("regression needs at least two examples");
    check_finite(x);
    for (double v : y)
        if (!std::isfinite(v)) throw DomainError("non-finite regression target");

    const double n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0;
    for (double v : y) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);

    LinearModel m;
    m.kind = ModelKind::regressor;
    m.params = params;
    m.weights.assign(x.cols, 0.0);
    if (sd == 0.0) {
        m.bias = mean;
        return m;
    }
    m.epsilon = params.epsilon >= 0 ? params.epsilon : 0.1 * sd;

    const auto l = x.rows;
    std::vector<std::int8_t> signs(2 * l);
    std::vector<double> p(2 * l);
    for (std::size_t i = 0; i < l; ++i) {
        signs[i] = 1;
        p[i] = m.epsilon - y[i];
        signs[i + l] = -1;
        p[i + l] = m.epsilon + y[i];
    }
    const auto k = svm::gram(x);
    auto result = svm::solve(k, l, signs, p, solver_options(params));
    for (std::size_t i = 0; i < l; ++i) {
        const double coef = result.alpha[i] - result.alpha[i + l];
        if (coef == 0.0) continue;
        const auto row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) m.weights[j] += coef * row[j];
    }
    m.bias = -result.rho;
    m.trace = trace_of(result);
    return m;
}

double hinge_objective(const LinearModel& m, const Matrix& x, std::span<const std::int8_t> y, double c) {
    double reg = 0;
    for (double w : m.weights) reg += w * w;
    double loss = 0;
    for (std::size_t i = 0; i < x.rows; ++i) loss += std::max(0.0, 1.0 - y[i] * m.decision(x.row(i)));
    return 0.5 * reg + c * loss;
}

double epsilon_objective(const LinearModel& m, const Matrix& x, std::span<const double> y, double c,
                         double epsilon) {
    double reg = 0;
    for (double w : m.weights) reg += w * w;
    double loss = 0;
    for (std::size_t i = 0; i < x.rows; ++i) loss += std::max(0.0, std::abs(m.decision(x.row(i)) - y[i]) - epsilon);
    return 0.5 * reg + c * loss;
}

std::optional<double> relative_error(double predicted, double actual) {
    if (actual == 0.0) return std::nullopt;
    return std::abs(predicted - actual) / std::abs(actual);
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw DomainError("k-fold split needs k >= 2");
    if (k > n) throw DomainError("k-fold split needs k <= n (k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    detail::Rng rng(seed);
    detail::shuffle(std::span<std::size_t>(order), rng);

    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        std::sort(folds[f].begin(), folds[f].end());
        pos += size;
    }
    return folds;
}

namespace {

// One pass of k-fold CV. When `weight_sums` is given, adds sum_classes |w_j|
// of every fold model to it.
double cv_pass(const Matrix& x, std::span<const std::string> y, std::size_t k, const SvmParams& params,
               std::uint64_t seed, std::vector<double>* weight_sums) {
    const auto folds = kfold_split(x.rows, k, seed);
    std::size_t correct = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train_idx;
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
        std::sort(train_idx.begin(), train_idx.end());

        std::vector<std::string> train_y;
        for (auto i : train_idx) train_y.push_back(y[i]);
        const std::set<std::string> distinct(train_y.begin(), train_y.end());
        if (distinct.size() < 2) {
            for (auto i : folds[f]) correct += y[i] == *distinct.begin() ? 1 : 0;
            continue;
        }
        const auto train_x = x.select_rows(train_idx);
        const auto z = fit_columns(train_x);
        const auto model = train_svc(standardized(train_x, z), train_y, params);
        for (auto i : folds[f]) correct += predict_svc(model, z.apply(x.row(i))) == y[i] ? 1 : 0;
        if (weight_sums)
            for (const auto& m : model.per_class)
                for (std::size_t j = 0; j < x.cols; ++j) (*weight_sums)[j] += std::abs(m.weights[j]);
    }
    return static_cast<double>(correct) / static_cast<double>(x.rows);
}

}  // namespace

double cross_validated_accuracy(const Matrix& x, std::span<const std::string> y, std::size_t k,
                                const SvmParams& params, std::uint64_t seed) {
    return cv_pass(x, y, k, params, seed, nullptr);
}

std::vector<RfeStep> rfe(const Matrix& x, std::span<const std::string> y, const SvmParams& params,
                         std::size_t cv_k, std::uint64_t seed) {
    if (x.cols < 2) throw DomainError("feature elimination needs at least two features");
    std::vector<std::size_t> active(x.cols);
    std::iota(active.begin(), active.end(), std::size_t{0});

    // Features are ranked by sum_classes |w| summed over the fold models
    // rather than one full-data fit; with redundant features a single
    // near-hard-margin fit hands weight to whichever copy its few support
    // vectors favour, and averaging over folds steadies the ranking.
    std::vector<RfeStep> steps;
    while (!active.empty()) {
        const auto sub = x.select_columns(active);
        std::vector<double> score(active.size(), 0.0);
        RfeStep step;
        step.num_features = active.size();
        step.cv_accuracy = cv_pass(sub, y, cv_k, params, seed, &score);
        if (active.size() > 1) {
            if (std::all_of(score.begin(), score.end(), [](double v) { return v == 0.0; })) {
                // Every training fold held a single class; rank on the full fit.
                const auto model = train_svc(standardized(sub, fit_columns(sub)), y, params);
                for (const auto& m : model.per_class)
                    for (std::size_t j = 0; j < active.size(); ++j) score[j] += std::abs(m.weights[j]);
            }
            const auto weakest = static_cast<std::size_t>(std::min_element(score.begin(), score.end()) - score.begin());
            step.eliminated = active[weakest];
            active.erase(active.begin() + static_cast<std::ptrdiff_t>(weakest));
        } else {
            active.clear();
        }
        steps.push_back(step);
    }
    return steps;
}

}  // namespace ppiphylo::learn
