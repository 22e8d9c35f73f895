#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppiphylo/svm.hpp"

namespace ppiphylo::learn {

using svm::Matrix;

struct SvmParams {
    double C = 100.0;
    /// Regression tube half-width; negative means 0.1 * std(targets).
    double epsilon = -1.0;
    std::uint64_t max_iters = 10'000'000;
    /// Stopping threshold on the KKT gap.
    double tolerance = 1e-3;
    std::uint64_t seed = 0;
};

enum class ModelKind { classifier, regressor };

struct TrainingTrace {
    std::uint64_t iterations = 0;
    bool converged = true;
    double kkt_gap = 0;
    std::vector<double> objective_trace;
};

/// f(x) = w.x + b.
struct LinearModel {
    std::vector<double> weights;
    double bias = 0;
    ModelKind kind = ModelKind::classifier;
    SvmParams params;
    /// Epsilon actually used (regressors).
    double epsilon = 0;
    TrainingTrace trace;

    double decision(std::span<const double> x) const;
};

/// One-vs-rest linear classifiers, labels in ascending order.
struct MulticlassModel {
    std::vector<std::string> labels;
    std::vector<LinearModel> per_class;

    std::size_t dimension() const { return per_class.empty() ? 0 : per_class.front().weights.size(); }
    std::vector<double> decision_values(std::span<const double> x) const;
};

/// Binary hinge-loss SVM on labels y in {-1, +1}.
LinearModel train_binary_svc(const Matrix& x, std::span<const std::int8_t> y, const SvmParams& params,
                             std::span<const double> gram = {});

/// One-vs-rest hinge-loss SVMs. Throws DegenerateModelError for a single
/// class and DomainError for non-finite rows or size mismatches.
MulticlassModel train_svc(const Matrix& x, std::span<const std::string> y, const SvmParams& params = {});

/// Label with the largest decision value; ties go to the earlier label.
std::string predict_svc(const MulticlassModel& m, std::span<const double> x);

/// Epsilon-insensitive support vector regression. Constant targets give
/// the constant predictor.
LinearModel train_svr(const Matrix& x, std::span<const double> y, const SvmParams& params = {});

/// 1/2 |w|^2 + C sum max(0, 1 - y (w.x + b)).
double hinge_objective(const LinearModel& m, const Matrix& x, std::span<const std::int8_t> y, double c);
/// 1/2 |w|^2 + C sum max(0, |w.x + b - y| - epsilon).
double epsilon_objective(const LinearModel& m, const Matrix& x, std::span<const double> y, double c, double epsilon);

/// |predicted - actual| / |actual|; empty when actual is 0.
std::optional<double> relative_error(double predicted, double actual);

/// Seeded shuffle of 0..n-1 cut into k folds whose sizes differ by at most
/// one (larger folds first). Indices within a fold are ascending.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

/// Mean k-fold accuracy of train_svc, standardizing on each training fold.
double cross_validated_accuracy(const Matrix& x, std::span<const std::string> y, std::size_t k,
                                const SvmParams& params, std::uint64_t seed);

struct RfeStep {
    std::size_t num_features = 0;
    double cv_accuracy = 0;
    /// Original column removed after this step; empty at the last step.
    std::optional<std::size_t> eliminated;
};

/// Recursive feature elimination: at each size, record k-fold accuracy,
/// then drop the column with the smallest sum over classes of |w|, summed
/// over the k fold models.
std::vector<RfeStep> rfe(const Matrix& x, std::span<const std::string> y, const SvmParams& params,
                         std::size_t cv_k, std::uint64_t seed);

}  // namespace ppiphylo::learn
