#include "ppiphylo/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppiphylo/error.hpp"

namespace ppiphylo::svm {

Matrix Matrix::select_columns(std::span<const std::size_t> columns) const {
    Matrix out(rows, columns.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < columns.size(); ++j) out(i, j) = (*this)(i, columns[j]);
    return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> picked) const {
    Matrix out(picked.size(), cols);
    for (std::size_t i = 0; i < picked.size(); ++i) {
        const auto src = row(picked[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

std::vector<double> gram(const Matrix& x) {
    const auto n = static_cast<std::int64_t>(x.rows);
    std::vector<double> k(x.rows * x.rows);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto xi = x.row(static_cast<std::size_t>(i));
        for (std::int64_t j = 0; j <= i; ++j) {
            const auto xj = x.row(static_cast<std::size_t>(j));
            double dot = 0;
            for (std::size_t c = 0; c < x.cols; ++c) dot += xi[c] * xj[c];
            k[static_cast<std::size_t>(i * n + j)] = dot;
            k[static_cast<std::size_t>(j * n + i)] = dot;
        }
    }
    return k;
}

namespace {

constexpr double kTau = 1e-12;

class Solver {
public:
    Solver(std::span<const double> k, std::size_t n, std::span<const std::int8_t> y, std::span<const double> p,
           const SolverOptions& opt)
        : k_(k), n_(n), y_(y), p_(p), opt_(opt), l_(y.size()), alpha_(l_, 0.0), grad_(p.begin(), p.end()), diag_(l_) {
        for (std::size_t t = 0; t < l_; ++t) diag_[t] = row(t)[wrap(t)];
    }

    SolverResult run() {
        SolverResult out;
        std::uint64_t iter = 0;
        while (true) {
            std::size_t i = 0, j = 0;
            double gap = 0;
            if (!select(i, j, gap)) {
                out.converged = true;
                out.kkt_gap = gap;
                break;
            }
            if (iter >= opt_.max_iters) {
                out.kkt_gap = gap;
                warn("SMO stopped at the iteration cap (" + std::to_string(opt_.max_iters) +
                     ") with KKT gap " + std::to_string(gap));
                break;
            }
            step(i, j);
            ++iter;
            if (opt_.checkpoint_every && iter % opt_.checkpoint_every == 0) out.objective_trace.push_back(objective());
        }
        out.iterations = iter;
        out.objective_trace.push_back(objective());
        out.rho = rho();
        out.alpha = std::move(alpha_);
        return out;
    }

private:
    // Examples past n_ reuse the Gram rows of the first n_ (regression duals).
    std::size_t wrap(std::size_t a) const { return a < n_ ? a : a - n_; }
    const double* row(std::size_t a) const { return k_.data() + wrap(a) * n_; }
    bool at_upper(std::size_t t) const { return alpha_[t] >= opt_.C; }
    bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }

    bool select(std::size_t& out_i, std::size_t& out_j, double& gap) const {
        constexpr double kNegInf = -std::numeric_limits<double>::infinity();
        double gmax = kNegInf, gmax2 = kNegInf;
        std::size_t i = l_;
        for (std::size_t t = 0; t < l_; ++t) {
            if (y_[t] == +1) {
                if (!at_upper(t) && -grad_[t] >= gmax) {
                    gmax = -grad_[t];
                    i = t;
                }
            } else if (!at_lower(t) && grad_[t] >= gmax) {
                gmax = grad_[t];
                i = t;
            }
        }
        std::size_t j = l_;
        double best = std::numeric_limits<double>::infinity();
        const double qii = i < l_ ? diag_[i] : 0.0;
        const double* ki = i < l_ ? row(i) : nullptr;
        for (std::size_t t = 0; t < l_ && i < l_; ++t) {
            if (y_[t] == +1) {
                if (at_lower(t)) continue;
                const double diff = gmax + grad_[t];
                if (grad_[t] >= gmax2) gmax2 = grad_[t];
                if (diff > 0) {
                    double quad = qii + diag_[t] - 2.0 * y_[i] * (y_[i] * y_[t] * ki[wrap(t)]);
                    if (quad <= 0) quad = kTau;
                    const double obj = -(diff * diff) / quad;
                    if (obj <= best) {
                        best = obj;
                        j = t;
                    }
                }
            } else {
                if (at_upper(t)) continue;
                const double diff = gmax - grad_[t];
                if (-grad_[t] >= gmax2) gmax2 = -grad_[t];
                if (diff > 0) {
                    double quad = qii + diag_[t] + 2.0 * y_[i] * (y_[i] * y_[t] * ki[wrap(t)]);
                    if (quad <= 0) quad = kTau;
                    const double obj = -(diff * diff) / quad;
                    if (obj <= best) {
                        best = obj;
                        j = t;
                    }
                }
            }
        }
        gap = (i < l_ && gmax2 > kNegInf) ? gmax + gmax2 : 0.0;
        if (i == l_ || j == l_ || gap < opt_.tolerance) return false;
        out_i = i;
        out_j = j;
        return true;
    }

    void step(std::size_t i, std::size_t j) {
        const double c = opt_.C;
        const double old_i = alpha_[i], old_j = alpha_[j];
        const double* ki = row(i);
        const double* kj = row(j);
        const double qij = y_[i] * y_[j] * ki[wrap(j)];
        auto& ai = alpha_[i];
        auto& aj = alpha_[j];
        if (y_[i] != y_[j]) {
            double quad = diag_[i] + diag_[j] + 2.0 * qij;
            if (quad <= 0) quad = kTau;
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0) {
                if (aj < 0) {
                    aj = 0;
                    ai = diff;
                }
            } else if (ai < 0) {
                ai = 0;
                aj = -diff;
            }
            if (diff > 0) {
                if (ai > c) {
                    ai = c;
                    aj = c - diff;
                }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            double quad = diag_[i] + diag_[j] - 2.0 * qij;
            if (quad <= 0) quad = kTau;
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) {
                    ai = c;
                    aj = sum - c;
                }
            } else if (aj < 0) {
                aj = 0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) {
                    aj = c;
                    ai = sum - c;
                }
            } else if (ai < 0) {
                ai = 0;
                aj = sum;
            }
        }
        const double di = ai - old_i, dj = aj - old_j;
        const int yi = y_[i], yj = y_[j];
        for (std::size_t base = 0; base < l_; base += n_) {
            const std::size_t end = std::min(l_, base + n_);
            for (std::size_t t = base; t < end; ++t) {
                const double qi = yi * y_[t] * ki[t - base];
                const double qj = yj * y_[t] * kj[t - base];
                grad_[t] += qi * di + qj * dj;
            }
        }
    }

    double objective() const {
        double f = 0;
        for (std::size_t t = 0; t < l_; ++t) f += alpha_[t] * (grad_[t] + p_[t]);
        return 0.5 * f;
    }

    double rho() const {
        double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum_free = 0;
        std::size_t free = 0;
        for (std::size_t t = 0; t < l_; ++t) {
            const double yg = y_[t] * grad_[t];
            if (at_upper(t)) {
                if (y_[t] == -1) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else if (at_lower(t)) {
                if (y_[t] == +1) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else {
                ++free;
                sum_free += yg;
            }
        }
        return free > 0 ? sum_free / static_cast<double>(free) : (ub + lb) / 2;
    }

    std::span<const double> k_;
    std::size_t n_;
    std::span<const std::int8_t> y_;
    std::span<const double> p_;
    SolverOptions opt_;
    std::size_t l_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
    std::vector<double> diag_;
};

}  // namespace

SolverResult solve(std::span<const double> gram_matrix, std::size_t num_examples, std::span<const std::int8_t> y,
                   std::span<const double> p, const SolverOptions& options) {
    if (y.size() != p.size()) throw DomainError("SMO: label and linear-term sizes differ");
    if (gram_matrix.size() != num_examples * num_examples) throw DomainError("SMO: Gram matrix has the wrong size");
    if (!(options.C > 0)) throw DomainError("SMO: C must be positive");
    return Solver(gram_matrix, num_examples, y, p, options).run();
}

}  // namespace ppiphylo::svm
