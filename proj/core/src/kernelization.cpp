#include "mfdh/kernelization.hpp"

#include <cmath>

#include "mfdh/errors.hpp"
#include "mfdh/rng.hpp"
#include "kmeans_impl.hpp"

namespace mfdh {

namespace {

double int_pow(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

double rbf(double dist2, double sigma) {
    return std::exp(-dist2 / (2.0 * sigma * sigma));
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw invalid_argument(std::string(what) + ": non-finite value");
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

void KernelFunctionSpec::validate() const {
    if (kind == KernelKind::rbf && !(sigma > 0.0))
        throw invalid_argument("KernelFunctionSpec: rbf requires sigma > 0");
    if (kind == KernelKind::polynomial && s < 1)
        throw invalid_argument("KernelFunctionSpec: polynomial requires degree >= 1");
}

void KernelCombination::validate() const {
    for (const auto& spec : image) spec.validate();
    for (const auto& spec : text) spec.validate();
    if (shared_across_modalities) {
        for (int r = 0; r < 3; ++r) {
            const auto& a = image[static_cast<std::size_t>(r)];
            const auto& b = text[static_cast<std::size_t>(r)];
            if (a.kind != b.kind || a.sigma != b.sigma || a.a != b.a || a.s != b.s)
                throw invalid_argument(
                    "KernelCombination: shared mode requires identical image/text specs per view");
        }
    }
}

Matrix log_map(const Matrix& spd) {
    if (spd.rows() != spd.cols()) throw invalid_argument("log_map: matrix must be square");
    const double scale = std::max(1.0, spd.cwiseAbs().maxCoeff());
    if ((spd - spd.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw invalid_argument("log_map: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(spd));
    if (eig.info() != Eigen::Success)
        throw manifold_domain_error("log_map: eigendecomposition failed");
    if (eig.eigenvalues().minCoeff() <= 0.0)
        throw manifold_domain_error("log_map: matrix is not positive definite");

    const Vector logs = eig.eigenvalues().array().log();
    return symmetrized(eig.eigenvectors() * logs.asDiagonal() * eig.eigenvectors().transpose());
}

double led_distance(const Matrix& c1, const Matrix& c2) {
    return (log_map(c1) - log_map(c2)).norm();
}

double kernel_eval(const KernelFunctionSpec& spec, const Vector& x, const Vector& y) {
    spec.validate();
    if (x.size() != y.size()) throw invalid_argument("kernel_eval: dimension mismatch");
    if (!x.allFinite() || !y.allFinite()) throw invalid_argument("kernel_eval: non-finite input");
    if (spec.kind == KernelKind::rbf) return rbf((x - y).squaredNorm(), spec.sigma);
    const double k = int_pow(x.dot(y) + spec.a, spec.s);
    require_finite(k, "kernel_eval");
    return k;
}

double kernel_eval_log(const KernelFunctionSpec& spec, const Matrix& lx, const Matrix& ly) {
    spec.validate();
    if (lx.rows() != ly.rows() || lx.cols() != ly.cols())
        throw invalid_argument("kernel_eval_log: dimension mismatch");
    if (!lx.allFinite() || !ly.allFinite())
        throw invalid_argument("kernel_eval_log: non-finite input");
    if (spec.kind == KernelKind::rbf) return rbf((lx - ly).squaredNorm(), spec.sigma);
    const double k = int_pow(lx.cwiseProduct(ly).sum() + spec.a, spec.s);
    require_finite(k, "kernel_eval_log");
    return k;
}

double kernel_eval_spd(const KernelFunctionSpec& spec, const Matrix& c1, const Matrix& c2) {
    return kernel_eval_log(spec, log_map(c1), log_map(c2));
}

AnchorSet select_anchors(const std::vector<MultiViewDescriptor>& samples,
                         const std::array<Index, 3>& per_view, std::uint64_t seed,
                         AnchorMethod method) {
    const auto n = static_cast<Index>(samples.size());
    if (n == 0) throw invalid_argument("select_anchors: no samples");
    for (int r = 0; r < 3; ++r) {
        const Index d_r = per_view[static_cast<std::size_t>(r)];
        if (d_r < 1) throw invalid_argument("select_anchors: anchor count must be >= 1");
        if (d_r > n) throw invalid_argument("select_anchors: anchor count exceeds sample count");
    }

    const Index hist_dim = samples.front().histogram.size();
    const Index mean_dim = samples.front().mean.size();
    const Index cov_dim = samples.front().covariance.rows();
    for (const auto& s : samples) {
        if (s.histogram.size() != hist_dim || s.mean.size() != mean_dim ||
            s.covariance.rows() != cov_dim || s.covariance.cols() != cov_dim)
            throw invalid_argument("select_anchors: inconsistent sample dimensions");
    }

    std::vector<Matrix> logs;
    logs.reserve(static_cast<std::size_t>(n));
    for (const auto& s : samples) logs.push_back(log_map(s.covariance));

    AnchorSet anchors;
    Rng rng(seed);

    if (method == AnchorMethod::random) {
        const auto pick0 = rng.sample_without_replacement(static_cast<std::size_t>(n),
                                                          static_cast<std::size_t>(per_view[0]));
        const auto pick1 = rng.sample_without_replacement(static_cast<std::size_t>(n),
                                                          static_cast<std::size_t>(per_view[1]));
        const auto pick2 = rng.sample_without_replacement(static_cast<std::size_t>(n),
                                                          static_cast<std::size_t>(per_view[2]));
        anchors.histogram.resize(hist_dim, per_view[0]);
        for (Index j = 0; j < per_view[0]; ++j)
            anchors.histogram.col(j) = samples[pick0[static_cast<std::size_t>(j)]].histogram;
        anchors.mean.resize(mean_dim, per_view[1]);
        for (Index j = 0; j < per_view[1]; ++j)
            anchors.mean.col(j) = samples[pick1[static_cast<std::size_t>(j)]].mean;
        anchors.cov_log.reserve(static_cast<std::size_t>(per_view[2]));
        for (Index j = 0; j < per_view[2]; ++j)
            anchors.cov_log.push_back(logs[pick2[static_cast<std::size_t>(j)]]);
        return anchors;
    }

    // kmeans anchors: cluster each view, covariances as vectorized log-maps
    Matrix hist_pts(hist_dim, n), mean_pts(mean_dim, n), log_pts(cov_dim * cov_dim, n);
    for (Index i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        hist_pts.col(i) = s.histogram;
        mean_pts.col(i) = s.mean;
        log_pts.col(i) = Eigen::Map<const Vector>(logs[static_cast<std::size_t>(i)].data(),
                                                  cov_dim * cov_dim);
    }
    anchors.histogram = detail::lloyd_kmeans(hist_pts, per_view[0], rng);
    anchors.mean = detail::lloyd_kmeans(mean_pts, per_view[1], rng);
    const Matrix log_centers = detail::lloyd_kmeans(log_pts, per_view[2], rng);
    anchors.cov_log.reserve(static_cast<std::size_t>(per_view[2]));
    for (Index j = 0; j < per_view[2]; ++j) {
        Matrix c = Eigen::Map<const Matrix>(log_centers.col(j).data(), cov_dim, cov_dim);
        anchors.cov_log.push_back(symmetrized(c));
    }
    return anchors;
}

Vector kernelize(const MultiViewDescriptor& sample, const AnchorSet& anchors,
                 const std::array<KernelFunctionSpec, 3>& specs, const ViewWeights& eta) {
    if (sample.histogram.size() != anchors.histogram.rows() ||
        sample.mean.size() != anchors.mean.rows())
        throw invalid_argument("kernelize: sample/anchor dimension mismatch");
    const auto counts = anchors.counts();
    if (counts[2] > 0 && sample.covariance.rows() != anchors.cov_log.front().rows())
        throw invalid_argument("kernelize: covariance dimension mismatch");

    Vector out(anchors.total_dim());
    Index at = 0;
    for (Index j = 0; j < counts[0]; ++j, ++at)
        out(at) = eta[0] * kernel_eval(specs[0], sample.histogram, anchors.histogram.col(j));
    for (Index j = 0; j < counts[1]; ++j, ++at)
        out(at) = eta[1] * kernel_eval(specs[1], sample.mean, anchors.mean.col(j));
    const Matrix sample_log = log_map(sample.covariance);
    for (Index j = 0; j < counts[2]; ++j, ++at)
        out(at) = eta[2] *
                  kernel_eval_log(specs[2], sample_log, anchors.cov_log[static_cast<std::size_t>(j)]);
    return out;
}

Matrix build_kernel_matrix(const std::vector<MultiViewDescriptor>& samples,
                           const AnchorSet& anchors,
                           const std::array<KernelFunctionSpec, 3>& specs,
                           const ViewWeights& eta) {
    Matrix k(anchors.total_dim(), static_cast<Index>(samples.size()));
    for (Index i = 0; i < k.cols(); ++i)
        k.col(i) = kernelize(samples[static_cast<std::size_t>(i)], anchors, specs, eta);
    return k;
}

}  // namespace mfdh
