#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "ppiphylo/detail/random.hpp"
#include "ppiphylo/error.hpp"
#include "ppiphylo/learn.hpp"
#include "synthetic.hpp"

using namespace ppiphylo;
using namespace ppiphylo::learn;

namespace {

Matrix matrix(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

struct Blobs {
    Matrix x;
    std::vector<std::string> y;
};

Blobs blobs(const std::vector<std::pair<double, double>>& centers, std::size_t per, double spread, std::uint64_t seed) {
    detail::Rng rng(seed);
    std::vector<std::vector<double>> rows;
    Blobs b;
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t i = 0; i < per; ++i) {
            rows.push_back({centers[c].first + spread * (detail::uniform_unit(rng) - 0.5),
                            centers[c].second + spread * (detail::uniform_unit(rng) - 0.5)});
            b.y.push_back("k" + std::to_string(c));
        }
    b.x = matrix(rows);
    return b;
}

double accuracy(const MulticlassModel& m, const Matrix& x, const std::vector<std::string>& y) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < x.rows; ++i) ok += predict_svc(m, x.row(i)) == y[i];
    return static_cast<double>(ok) / static_cast<double>(x.rows);
}

}  // namespace

TEST_CASE("separable blobs are classified perfectly") {
    const auto b = blobs({{-3, 0}, {3, 0}}, 20, 2.0, 1);
    const auto m = train_svc(b.x, b.y);
    CHECK(m.labels == std::vector<std::string>{"k0", "k1"});
    CHECK(accuracy(m, b.x, b.y) == 1.0);
}

TEST_CASE("XOR is not linearly separable") {
    const auto x = matrix({{0, 0}, {1, 1}, {0, 1}, {1, 0}});
    const std::vector<std::string> y{"a", "a", "b", "b"};
    CHECK(accuracy(train_svc(x, y), x, y) <= 0.75);
}

TEST_CASE("three separable classes") {
    const auto b = blobs({{0, 6}, {-6, -4}, {6, -4}}, 15, 2.0, 2);
    const auto m = train_svc(b.x, b.y);
    CHECK(accuracy(m, b.x, b.y) == 1.0);
    // Each one-vs-rest function is positive exactly on its own class.
    for (std::size_t i = 0; i < b.x.rows; ++i) {
        const auto d = m.decision_values(b.x.row(i));
        for (std::size_t c = 0; c < m.labels.size(); ++c) CHECK((d[c] > 0) == (m.labels[c] == b.y[i]));
    }
}

TEST_CASE("argmax, ties and scaling") {
    MulticlassModel m;
    m.labels = {"first", "second"};
    m.per_class.resize(2);
    m.per_class[0].weights = {1.0};
    m.per_class[1].weights = {-0.5};
    const std::vector<double> x{2.0};
    CHECK(predict_svc(m, x) == "first");
    m.per_class[1].weights = {1.0};
    CHECK(predict_svc(m, x) == "first");

    const auto b = blobs({{0, 6}, {-6, -4}, {6, -4}}, 10, 6.0, 3);
    auto trained = train_svc(b.x, b.y);
    auto scaled = trained;
    for (auto& c : scaled.per_class) {
        for (auto& w : c.weights) w *= 3.7;
        c.bias *= 3.7;
    }
    for (std::size_t i = 0; i < b.x.rows; ++i) CHECK(predict_svc(trained, b.x.row(i)) == predict_svc(scaled, b.x.row(i)));

    const std::vector<double> bad{std::numeric_limits<double>::quiet_NaN(), 0};
    CHECK_THROWS_AS(predict_svc(trained, bad), DomainError);
    const std::vector<double> short_row{1.0};
    CHECK_THROWS_AS(predict_svc(trained, short_row), DomainError);
}

TEST_CASE("classifier input errors") {
    const auto x = matrix({{0, 1}, {1, 0}});
    const std::vector<std::string> one{"a", "a"};
    CHECK_THROWS_AS(train_svc(x, one), DegenerateModelError);
    const std::vector<std::string> three{"a", "b", "c"};
    CHECK_THROWS_AS(train_svc(x, three), DomainError);
}

TEST_CASE("training is reproducible") {
    const auto b = blobs({{0, 1}, {1, 0}, {0.5, 0.5}}, 20, 3.0, 4);
    const auto a = train_svc(b.x, b.y);
    const auto c = train_svc(b.x, b.y);
    for (std::size_t k = 0; k < a.per_class.size(); ++k) {
        CHECK(a.per_class[k].weights == c.per_class[k].weights);
        CHECK(a.per_class[k].bias == c.per_class[k].bias);
    }
}

TEST_CASE("dual objective never increases across checkpoints") {
    const auto b = blobs({{0, 1}, {1, 0}}, 60, 3.0, 5);
    std::vector<std::int8_t> y;
    for (const auto& l : b.y) y.push_back(l == "k0" ? 1 : -1);
    const auto m = train_binary_svc(b.x, y, {});
    REQUIRE(m.trace.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < m.trace.objective_trace.size(); ++i)
        CHECK(m.trace.objective_trace[i] <= m.trace.objective_trace[i - 1] + 1e-9);
    CHECK(m.trace.converged);
    CHECK(m.trace.kkt_gap <= 1e-3);
}

TEST_CASE("no descent direction along coordinates at convergence") {
    const auto b = blobs({{0, 1}, {1, 0}}, 40, 3.0, 6);
    std::vector<std::int8_t> y;
    for (const auto& l : b.y) y.push_back(l == "k0" ? 1 : -1);
    SvmParams p;
    p.tolerance = 1e-6;
    const auto m = train_binary_svc(b.x, y, p);
    const double f0 = hinge_objective(m, b.x, y, p.C);
    const double h = 1e-6;
    // Weights plus the bias, probed in both directions.
    for (std::size_t j = 0; j <= m.weights.size(); ++j)
        for (double dir : {1.0, -1.0}) {
            auto probe = m;
            (j < m.weights.size() ? probe.weights[j] : probe.bias) += dir * h;
            const double slope = (hinge_objective(probe, b.x, y, p.C) - f0) / h;
            CAPTURE(j);
            CHECK(slope >= -1e-3 * std::max(1.0, f0));
        }
}

TEST_CASE("regression fits a noiseless line") {
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (int i = 0; i < 20; ++i) {
        rows.push_back({0.25 * i});
        y.push_back(2 * 0.25 * i + 1);
    }
    SvmParams p;
    p.epsilon = 0;
    const auto x = matrix(rows);
    const auto m = train_svr(x, y, p);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(m.decision(x.row(i)) - y[i]) < 1e-3);
}

TEST_CASE("constant targets give the constant predictor") {
    const auto x = matrix({{1, 2}, {3, 4}, {5, 7}});
    const std::vector<double> y{5, 5, 5};
    const auto m = train_svr(x, y);
    CHECK(m.bias == 5);
    CHECK(m.weights == std::vector<double>{0, 0});
}

TEST_CASE("a target moved within the tube leaves the fit unchanged") {
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({static_cast<double>(i)});
        y.push_back(i);
    }
    const auto x = matrix(rows);
    SvmParams p;
    p.epsilon = 0.5;
    p.tolerance = 1e-8;
    const auto clean = train_svr(x, y, p);
    auto moved = y;
    moved[4] = 4.2;
    const auto fit = train_svr(x, moved, p);
    CHECK(std::abs(fit.weights[0] - clean.weights[0]) < 1e-6);
    CHECK(std::abs(fit.bias - clean.bias) < 1e-6);
    CHECK(epsilon_objective(fit, x, moved, p.C, 0.5) ==
          doctest::Approx(epsilon_objective(clean, x, y, p.C, 0.5)).epsilon(1e-9));
    // The moved point is strictly inside the tube of the clean fit.
    CHECK(std::abs(clean.decision(x.row(4)) - 4.2) < 0.5);
}

TEST_CASE("default epsilon is a tenth of the target spread") {
    const auto x = matrix({{0}, {1}, {2}, {3}});
    const std::vector<double> y{0, 2, 4, 6};
    const auto m = train_svr(x, y);
    CHECK(m.epsilon == doctest::Approx(0.1 * std::sqrt(5.0)));
}

TEST_CASE("relative error") {
    CHECK(*relative_error(11, 10) == doctest::Approx(0.1));
    CHECK(*relative_error(10, 10) == 0.0);
    CHECK(*relative_error(0.5, -1) == doctest::Approx(1.5));
    CHECK_FALSE(relative_error(3, 0).has_value());
}

TEST_CASE("k-fold split") {
    const auto f = kfold_split(10, 5, 0);
    REQUIRE(f.size() == 5);
    for (const auto& fold : f) CHECK(fold.size() == 2);
    std::vector<std::size_t> sizes;
    for (const auto& fold : kfold_split(11, 5, 0)) sizes.push_back(fold.size());
    CHECK(sizes == std::vector<std::size_t>{3, 2, 2, 2, 2});
    CHECK(kfold_split(37, 4, 9) == kfold_split(37, 4, 9));
    CHECK_THROWS_AS(kfold_split(3, 5, 0), DomainError);
    CHECK_THROWS_AS(kfold_split(3, 1, 0), DomainError);

    for (std::size_t n = 2; n < 30; n += 3)
        for (std::size_t k = 2; k <= n; k += 2)
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto folds = kfold_split(n, k, seed);
                std::set<std::size_t> all;
                std::size_t lo = n, hi = 0;
                for (const auto& fold : folds) {
                    all.insert(fold.begin(), fold.end());
                    lo = std::min(lo, fold.size());
                    hi = std::max(hi, fold.size());
                    CHECK(std::is_sorted(fold.begin(), fold.end()));
                }
                CHECK(all.size() == n);
                CHECK(hi - lo <= 1);
            }
}

TEST_CASE("cross-validated accuracy on separable data") {
    const auto b = blobs({{-4, 0}, {4, 0}}, 15, 2.0, 7);
    CHECK(cross_validated_accuracy(b.x, b.y, 5, {}, 1) == 1.0);
}

TEST_CASE("RFE drops a constant column first") {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> y;
    for (int i = 0; i < 20; ++i) {
        rows.push_back({3.0, i < 10 ? -1.0 - 0.1 * i : 1.0 + 0.1 * i});
        y.push_back(i < 10 ? "neg" : "pos");
    }
    const auto steps = rfe(matrix(rows), y, {}, 4, 0);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].num_features == 2);
    CHECK(steps[0].eliminated == 0);
    CHECK(steps[1].num_features == 1);
    CHECK_FALSE(steps[1].eliminated.has_value());
    CHECK(steps[1].cv_accuracy == 1.0);
}

TEST_CASE("RFE removes noise columns before informative ones") {
    const auto d = synth::rfe_dataset(150, 6, 3, 3);
    const auto steps = rfe(d.x, d.y, {}, 5, 3);
    REQUIRE(steps.size() == 9);
    for (std::size_t i = 0; i < 3; ++i) CHECK(*steps[i].eliminated >= d.informative);
}
