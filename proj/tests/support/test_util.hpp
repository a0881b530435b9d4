#pragma once

#include <string>
#include <vector>

#include "mfdh/descriptors.hpp"
#include "mfdh/kernelization.hpp"
#include "mfdh/rng.hpp"
#include "mfdh/types.hpp"

namespace testutil {

using mfdh::Index;
using mfdh::Matrix;
using mfdh::Rng;
using mfdh::Vector;

inline mfdh::DescriptorSet make_set(std::string id,
                                    const std::vector<std::vector<double>>& columns) {
    mfdh::DescriptorSet set;
    set.sample_id = std::move(id);
    const auto dim = static_cast<Index>(columns.front().size());
    set.vectors.resize(dim, static_cast<Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (Index r = 0; r < dim; ++r)
            set.vectors(r, static_cast<Index>(c)) = columns[c][static_cast<std::size_t>(r)];
    return set;
}

inline Matrix random_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
    Matrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = scale * rng.normal();
    return m;
}

inline Matrix random_unit_matrix(Rng& rng, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = rng.next_unit();
    return m;
}

inline Matrix random_sign_matrix(Rng& rng, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = rng.sign();
    return m;
}

/// One-hot label matrix with every class hit at least once when n >= c.
inline Matrix random_onehot(Rng& rng, Index classes, Index n) {
    Matrix y = Matrix::Zero(classes, n);
    for (Index i = 0; i < n; ++i) {
        const Index c = i < classes ? i : static_cast<Index>(rng.below(
                                              static_cast<std::uint64_t>(classes)));
        y(c, i) = 1.0;
    }
    return y;
}

inline Matrix random_spd(Rng& rng, Index dim, double floor = 0.5) {
    const Matrix m = random_matrix(rng, dim, dim);
    Matrix spd = m * m.transpose();
    spd.diagonal().array() += floor;
    return 0.5 * (spd + spd.transpose());
}

inline Matrix random_orthogonal(Rng& rng, Index dim) {
    const Matrix m = random_matrix(rng, dim, dim);
    return Eigen::HouseholderQR<Matrix>(m).householderQ();
}

/// Independent matrix exponential oracle for symmetric matrices.
inline Matrix exp_map_oracle(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (sym + sym.transpose()));
    const Vector exps = eig.eigenvalues().array().exp();
    return eig.eigenvectors() * exps.asDiagonal() * eig.eigenvectors().transpose();
}

/// Anchors taken from the samples in their given order (unpermuted), so the
/// per-view kernel blocks against the same samples are true Gram matrices.
inline mfdh::AnchorSet anchors_from_samples(const std::vector<mfdh::MultiViewDescriptor>& samples) {
    mfdh::AnchorSet anchors;
    const auto n = static_cast<Index>(samples.size());
    anchors.histogram.resize(samples.front().histogram.size(), n);
    anchors.mean.resize(samples.front().mean.size(), n);
    for (Index j = 0; j < n; ++j) {
        const auto& s = samples[static_cast<std::size_t>(j)];
        anchors.histogram.col(j) = s.histogram;
        anchors.mean.col(j) = s.mean;
        anchors.cov_log.push_back(mfdh::log_map(s.covariance));
    }
    return anchors;
}

/// Brute-force covariance oracle: explicit double loop over Eq-style sums.
inline Matrix covariance_oracle(const Matrix& vectors) {
    const Index d = vectors.rows();
    const Index n = vectors.cols();
    Vector mean = Vector::Zero(d);
    for (Index j = 0; j < n; ++j) mean += vectors.col(j);
    mean /= static_cast<double>(n);
    Matrix cov = Matrix::Zero(d, d);
    for (Index j = 0; j < n; ++j) {
        const Vector dev = vectors.col(j) - mean;
        for (Index r = 0; r < d; ++r)
            for (Index c = 0; c < d; ++c) cov(r, c) += dev(r) * dev(c);
    }
    return cov / static_cast<double>(n - 1);
}

}  // namespace testutil
