#include "mfdh/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfdh/errors.hpp"
#include "mfdh/rng.hpp"

namespace mfdh {

namespace {

constexpr double kRidgeFallback = 1e-8;

bool ldlt_usable(const Eigen::LDLT<Matrix>& ldlt) {
    if (ldlt.info() != Eigen::Success) return false;
    const Vector d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (!(dmax > 0.0)) return false;
    return d.minCoeff() > dmax * 1e-13;
}

/// Caches the LDLT of K K^T (constant over training); falls back to a small
/// ridge when the Gram matrix is numerically singular.
class GramSolver {
public:
    explicit GramSolver(const Matrix& k) : k_(k) {
        Matrix gram = k * k.transpose();
        ldlt_.compute(gram);
        if (!ldlt_usable(ldlt_)) {
            gram.diagonal().array() += kRidgeFallback;
            ldlt_.compute(gram);
            if (!ldlt_usable(ldlt_))
                throw singular_system_error("train: kernel Gram matrix unusable even with ridge");
        }
    }

    Matrix solve_p(const Matrix& b) const {
        return ldlt_.solve(k_ * b.transpose()).transpose();
    }

private:
    const Matrix& k_;
    Eigen::LDLT<Matrix> ldlt_;
};

std::vector<Index> canonical_sample_order(const Matrix& psi, const Matrix& phi) {
    std::vector<Index> order(static_cast<std::size_t>(psi.cols()));
    std::iota(order.begin(), order.end(), Index{0});
    const auto column_less = [&](Index a, Index b) {
        for (Index r = 0; r < psi.rows(); ++r) {
            if (psi(r, a) < psi(r, b)) return true;
            if (psi(r, a) > psi(r, b)) return false;
        }
        for (Index r = 0; r < phi.rows(); ++r) {
            if (phi(r, a) < phi(r, b)) return true;
            if (phi(r, a) > phi(r, b)) return false;
        }
        return false;
    };
    std::stable_sort(order.begin(), order.end(), column_less);
    return order;
}

std::vector<Index> canonical_label_order(const Matrix& y) {
    std::vector<Index> order(static_cast<std::size_t>(y.rows()));
    std::iota(order.begin(), order.end(), Index{0});
    const auto row_less = [&](Index a, Index b) {
        for (Index i = 0; i < y.cols(); ++i) {
            if (y(a, i) < y(b, i)) return true;
            if (y(a, i) > y(b, i)) return false;
        }
        return false;
    };
    std::stable_sort(order.begin(), order.end(), row_less);
    return order;
}

Matrix permute_cols(const Matrix& m, const std::vector<Index>& order) {
    Matrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.cols(); ++i) out.col(i) = m.col(order[static_cast<std::size_t>(i)]);
    return out;
}

Matrix permute_rows(const Matrix& m, const std::vector<Index>& order) {
    Matrix out(m.rows(), m.cols());
    for (Index r = 0; r < m.rows(); ++r) out.row(r) = m.row(order[static_cast<std::size_t>(r)]);
    return out;
}

/// Keeps whichever projection leaves the smaller residual ||B - P K||_F^2;
/// the ridge fallback solves a slightly biased system, and the alternation
/// may never increase the objective.
Matrix better_p(Matrix candidate, Matrix incumbent, const Matrix& b, const Matrix& k) {
    const double cand = (b - candidate * k).squaredNorm();
    const double have = (b - incumbent * k).squaredNorm();
    return cand <= have ? std::move(candidate) : std::move(incumbent);
}

void check_train_inputs(const Matrix& psi, const Matrix& phi, const Matrix& y) {
    if (psi.cols() != phi.cols() || psi.cols() != y.cols())
        throw invalid_argument("train: Psi, Phi, Y must have the same number of columns");
    if (psi.cols() == 0) throw invalid_argument("train: no samples");
    validate_label_matrix(y);
}

}  // namespace

void TrainConfig::validate() const {
    if (code_length < 1) throw invalid_argument("TrainConfig: code_length must be >= 1");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw invalid_argument("TrainConfig: alpha and beta must be > 0");
    if (!(lambda > 0.0)) throw invalid_argument("TrainConfig: lambda must be > 0");
    if (max_outer_iters < 0) throw invalid_argument("TrainConfig: max_outer_iters must be >= 0");
    if (dcc_sweeps < 1) throw invalid_argument("TrainConfig: dcc_sweeps must be >= 1");
    if (!(tol_rel > 0.0)) throw invalid_argument("TrainConfig: tol_rel must be > 0");
}

void validate_label_matrix(const Matrix& y) {
    for (Index i = 0; i < y.cols(); ++i) {
        bool any = false;
        for (Index j = 0; j < y.rows(); ++j) {
            const double v = y(j, i);
            if (v != 0.0 && v != 1.0)
                throw invalid_argument("label matrix entries must be 0 or 1");
            any = any || v == 1.0;
        }
        if (!any) throw invalid_argument("label matrix has an all-zero column");
    }
}

double objective(const Matrix& b, const Matrix& p_img, const Matrix& p_txt, const Matrix& w,
                 const Matrix& y, const Matrix& psi, const Matrix& phi, double alpha,
                 double beta, double lambda) {
    const Index n = b.cols();
    const Index code_len = b.rows();
    if (y.cols() != n || psi.cols() != n || phi.cols() != n ||
        p_img.rows() != code_len || p_txt.rows() != code_len || w.rows() != code_len ||
        p_img.cols() != psi.rows() || p_txt.cols() != phi.rows() || w.cols() != y.rows())
        throw invalid_argument("objective: inconsistent dimensions");
    return (y - w.transpose() * b).squaredNorm() + alpha * (b - p_img * psi).squaredNorm() +
           beta * (b - p_txt * phi).squaredNorm() + lambda * w.squaredNorm();
}

Matrix update_p(const Matrix& b, const Matrix& k, double ridge_eps) {
    if (b.cols() != k.cols()) throw invalid_argument("update_p: B and K column counts differ");
    if (ridge_eps < 0.0) throw invalid_argument("update_p: ridge_eps must be >= 0");
    Matrix gram = k * k.transpose();
    gram.diagonal().array() += ridge_eps;
    Eigen::LDLT<Matrix> ldlt(gram);
    if (!ldlt_usable(ldlt))
        throw singular_system_error("update_p: K K^T is numerically singular");
    return ldlt.solve(k * b.transpose()).transpose();
}

Matrix update_w(const Matrix& b, const Matrix& y, double lambda) {
    if (b.cols() != y.cols()) throw invalid_argument("update_w: B and Y column counts differ");
    if (!(lambda > 0.0)) throw invalid_argument("update_w: lambda must be > 0");
    Matrix gram = b * b.transpose();
    gram.diagonal().array() += lambda;
    return Eigen::LLT<Matrix>(gram).solve(b * y.transpose());
}

Matrix update_b_dcc(const Matrix& b, const Matrix& w, const Matrix& p_img, const Matrix& p_txt,
                    const Matrix& y, const Matrix& psi, const Matrix& phi, double alpha,
                    double beta, int sweeps) {
    if (sweeps < 1) throw invalid_argument("update_b_dcc: sweeps must be >= 1");
    const Index code_len = b.rows();
    const Index n = b.cols();

    const Matrix q = w * y + alpha * (p_img * psi) + beta * (p_txt * phi);  // L x n
    const Matrix row_gram = w * w.transpose();                              // L x L
    if (q.rows() != code_len || q.cols() != n)
        throw invalid_argument("update_b_dcc: inconsistent dimensions");

    Matrix out = b;
    Vector coupling(n);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        bool changed = false;
        for (Index l = 0; l < code_len; ++l) {
            coupling.setZero();
            for (Index m = 0; m < code_len; ++m) {
                if (m == l) continue;
                coupling += row_gram(m, l) * out.row(m).transpose();
            }
            for (Index i = 0; i < n; ++i) {
                const double z = (q(l, i) - coupling(i)) >= 0.0 ? 1.0 : -1.0;
                if (z != out(l, i)) {
                    out(l, i) = z;
                    changed = true;
                }
            }
        }
        if (!changed) break;  // fixed point; further sweeps are no-ops
    }
    return out;
}

TrainResult train(const Matrix& psi, const Matrix& phi, const Matrix& y, const TrainConfig& cfg) {
    cfg.validate();
    check_train_inputs(psi, phi, y);

    const Index n = psi.cols();
    const Index code_len = cfg.code_length;

    // Content-derived internal ordering. All reductions over samples and
    // labels then run in an order independent of how the caller happened to
    // arrange the columns, which makes permutation equivariance bit-exact.
    const auto sample_order = canonical_sample_order(psi, phi);
    const Matrix psi_c = permute_cols(psi, sample_order);
    const Matrix phi_c = permute_cols(phi, sample_order);
    const Matrix y_sampled = permute_cols(y, sample_order);
    const auto label_order = canonical_label_order(y_sampled);
    const Matrix y_c = permute_rows(y_sampled, label_order);

    Rng rng(cfg.seed);
    Matrix b(code_len, n);
    for (Index i = 0; i < n; ++i)
        for (Index l = 0; l < code_len; ++l) b(l, i) = rng.sign();

    const GramSolver img_solver(psi_c);
    const GramSolver txt_solver(phi_c);

    Matrix p_img = img_solver.solve_p(b);
    Matrix p_txt = txt_solver.solve_p(b);
    Matrix w = update_w(b, y_c, cfg.lambda);

    TrainResult result;
    result.objective_trace.push_back(
        objective(b, p_img, p_txt, w, y_c, psi_c, phi_c, cfg.alpha, cfg.beta, cfg.lambda));

    for (int t = 1; t <= cfg.max_outer_iters; ++t) {
        result.iterations = t;
        p_img = better_p(img_solver.solve_p(b), std::move(p_img), b, psi_c);
        p_txt = better_p(txt_solver.solve_p(b), std::move(p_txt), b, phi_c);
        w = update_w(b, y_c, cfg.lambda);
        b = update_b_dcc(b, w, p_img, p_txt, y_c, psi_c, phi_c, cfg.alpha, cfg.beta,
                         cfg.dcc_sweeps);

        const double f =
            objective(b, p_img, p_txt, w, y_c, psi_c, phi_c, cfg.alpha, cfg.beta, cfg.lambda);
        const double prev = result.objective_trace.back();
        result.objective_trace.push_back(f);
        if (std::abs(prev - f) < cfg.tol_rel * std::max(std::abs(prev), 1e-30)) break;
    }

    // restore the caller's sample and label order
    result.b.resize(code_len, n);
    for (Index i = 0; i < n; ++i) result.b.col(sample_order[static_cast<std::size_t>(i)]) = b.col(i);
    result.w.resize(code_len, y.rows());
    for (Index j = 0; j < y.rows(); ++j)
        result.w.col(label_order[static_cast<std::size_t>(j)]) = w.col(j);
    result.p_img = std::move(p_img);
    result.p_txt = std::move(p_txt);
    return result;
}

}  // namespace mfdh
