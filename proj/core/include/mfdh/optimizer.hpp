#pragma once

#include <cstdint>
#include <vector>

#include "mfdh/types.hpp"

namespace mfdh {

struct TrainConfig {
    Index code_length = 16;  // L
    double alpha = 0.1;      // image projection penalty
    double beta = 0.1;       // text projection penalty
    double lambda = 0.01;    // classifier regularization
    int max_outer_iters = 50;
    int dcc_sweeps = 3;      // full row sweeps per B update
    double tol_rel = 1e-5;   // relative objective change at which to stop
    std::uint64_t seed = 0;

    void validate() const;
};

/// Checks a c x n label matrix: entries in {0,1}, every column nonzero.
void validate_label_matrix(const Matrix& y);

/// The joint objective
///   ||Y - W^T B||_F^2 + alpha ||B - P_img Psi||_F^2
///     + beta ||B - P_txt Phi||_F^2 + lambda ||W||_F^2.
double objective(const Matrix& b, const Matrix& p_img, const Matrix& p_txt, const Matrix& w,
                 const Matrix& y, const Matrix& psi, const Matrix& phi, double alpha,
                 double beta, double lambda);

/// Closed-form projection update P = B K^T (K K^T + ridge_eps I)^{-1}.
/// Throws singular_system_error when the Gram matrix is numerically singular
/// at ridge_eps = 0 (callers retry with ridge_eps = 1e-8).
Matrix update_p(const Matrix& b, const Matrix& k, double ridge_eps);

/// Closed-form classifier update W = (B B^T + lambda I)^{-1} B Y^T, lambda > 0.
Matrix update_w(const Matrix& b, const Matrix& y, double lambda);

/// Discrete cyclic coordinate descent on B: with Q = W Y + alpha P_img Psi +
/// beta P_txt Phi, each row l is set to sgn(q - B~^T W~ u) (sgn(0) = +1),
/// cycling for up to `sweeps` full sweeps (stops early at a fixed point).
/// Never increases the objective.
Matrix update_b_dcc(const Matrix& b, const Matrix& w, const Matrix& p_img, const Matrix& p_txt,
                    const Matrix& y, const Matrix& psi, const Matrix& phi, double alpha,
                    double beta, int sweeps);

/// Learned quantities of one training run. The full serializable model wraps
/// this together with the frozen anchor sets and kernel configuration.
struct TrainResult {
    Matrix b;      // L x n, entries in {-1,+1}
    Matrix p_img;  // L x D
    Matrix p_txt;  // L x D
    Matrix w;      // L x c
    std::vector<double> objective_trace;  // one entry for init, one per outer iteration
    int iterations = 0;
};

/// Alternating optimization: B initialized to seeded random signs, P/W to
/// their closed forms, then cycles {P_img, P_txt, W, B} until the relative
/// objective change drops below tol_rel or max_outer_iters is reached.
///
/// Columns of Psi/Phi/Y (samples) and rows of Y (labels) are internally
/// reordered to a content-derived canonical order and restored on output, so
/// jointly permuting the inputs permutes B (and W for label permutations)
/// bit-exactly.
TrainResult train(const Matrix& psi, const Matrix& phi, const Matrix& y, const TrainConfig& cfg);

}  // namespace mfdh
