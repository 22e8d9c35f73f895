#pragma once

// Sequential minimal optimization for the linear-kernel SVM duals
//
//     min_a  1/2 a'Qa + p'a   s.t.  y'a = 0,  0 <= a_i <= C,
//
// with y_i in {-1, +1} and Q_ij = y_i y_j K_ij. Working pairs are chosen by
// the maximal-violating-pair rule with second-order gain; the KKT gap
// max_violation - min_violation is the stopping certificate.

#include <cstdint>
#include <span>
#include <vector>

namespace ppiphylo::svm {

/// Row-major dense matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    /// Copy with only the listed columns, in the listed order.
    Matrix select_columns(std::span<const std::size_t> columns) const;
    /// Copy with only the listed rows, in the listed order.
    Matrix select_rows(std::span<const std::size_t> rows) const;
};

/// Gram matrix K = X X' (OpenMP over rows).
std::vector<double> gram(const Matrix& x);

struct SolverOptions {
    double C = 100.0;
    double tolerance = 1e-3;
    std::uint64_t max_iters = 10'000'000;
    /// Record the dual objective every this many iterations (0: never).
    std::uint64_t checkpoint_every = 0;
};

struct SolverResult {
    std::vector<double> alpha;
    double rho = 0;
    std::uint64_t iterations = 0;
    bool converged = false;
    double kkt_gap = 0;
    /// Dual objective at checkpoints, plus the final value.
    std::vector<double> objective_trace;
};

/// `gram_matrix` is the n x n example Gram matrix. Variable t refers to
/// example t mod n, which lets regression pass 2n variables.
SolverResult solve(std::span<const double> gram_matrix, std::size_t num_examples,
                   std::span<const std::int8_t> y, std::span<const double> p, const SolverOptions& options);

}  // namespace ppiphylo::svm
