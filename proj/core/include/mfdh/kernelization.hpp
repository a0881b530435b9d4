#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mfdh/descriptors.hpp"
#include "mfdh/types.hpp"

namespace mfdh {

enum class KernelKind { rbf, polynomial };

/// One kernel function: k(x,y) = exp(-d(x,y)^2 / (2 sigma^2)) for rbf,
/// (<x,y> + a)^s for polynomial. View 2 uses the log-Euclidean embedding for
/// both the distance and the inner product.
struct KernelFunctionSpec {
    KernelKind kind = KernelKind::rbf;
    double sigma = 1.0;  // rbf bandwidth
    double a = 1.0;      // polynomial offset
    int s = 5;           // polynomial degree

    void validate() const;
};

/// Per-view kernel choice for the three views (histogram, mean, covariance).
/// When `shared_across_modalities` is set, image and text must use the same
/// spec per view.
struct KernelCombination {
    std::array<KernelFunctionSpec, 3> image{};
    std::array<KernelFunctionSpec, 3> text{};
    bool shared_across_modalities = true;

    const std::array<KernelFunctionSpec, 3>& for_modality(Modality m) const {
        return m == Modality::image ? image : text;
    }
    void validate() const;
};

/// Per-view multiplicative weights applied to the kernelized blocks.
using ViewWeights = std::array<double, 3>;

/// Anchor samples per view, stored in each view's native representation;
/// view-2 anchors are kept pre-log-mapped.
struct AnchorSet {
    Matrix histogram;              // hist_dim x d1, one anchor per column
    Matrix mean;                   // mean_dim x d2
    std::vector<Matrix> cov_log;   // d3 symmetric matrices

    std::array<Index, 3> counts() const {
        return {histogram.cols(), mean.cols(), static_cast<Index>(cov_log.size())};
    }
    Index total_dim() const {
        return histogram.cols() + mean.cols() + static_cast<Index>(cov_log.size());
    }
};

enum class AnchorMethod { random, kmeans };

/// Matrix logarithm of an SPD matrix via symmetric eigendecomposition.
/// Throws manifold_domain_error when the smallest eigenvalue is <= 0.
Matrix log_map(const Matrix& spd);

/// Log-Euclidean distance: Frobenius norm of log_map(c1) - log_map(c2).
double led_distance(const Matrix& c1, const Matrix& c2);

/// Scalar kernel on Euclidean views (histogram, mean).
double kernel_eval(const KernelFunctionSpec& spec, const Vector& x, const Vector& y);

/// Scalar kernel on the covariance view, inputs already log-mapped.
double kernel_eval_log(const KernelFunctionSpec& spec, const Matrix& lx, const Matrix& ly);

/// Scalar kernel on the covariance view, SPD inputs.
double kernel_eval_spd(const KernelFunctionSpec& spec, const Matrix& c1, const Matrix& c2);

/// Picks d_r anchors per view. `random` draws uniformly without replacement;
/// `kmeans` clusters each view (covariances in the log-Euclidean chart) and
/// uses the centroids. Deterministic under `seed`.
AnchorSet select_anchors(const std::vector<MultiViewDescriptor>& samples,
                         const std::array<Index, 3>& per_view, std::uint64_t seed,
                         AnchorMethod method = AnchorMethod::random);

/// Kernel responses of one sample against every anchor, blocks stacked in view
/// order and scaled by the view weights. Length is the anchor total_dim.
Vector kernelize(const MultiViewDescriptor& sample, const AnchorSet& anchors,
                 const std::array<KernelFunctionSpec, 3>& specs,
                 const ViewWeights& eta = {1.0, 1.0, 1.0});

/// Column i is kernelize(samples[i]); assembles the D x n kernel matrix.
Matrix build_kernel_matrix(const std::vector<MultiViewDescriptor>& samples,
                           const AnchorSet& anchors,
                           const std::array<KernelFunctionSpec, 3>& specs,
                           const ViewWeights& eta = {1.0, 1.0, 1.0});

}  // namespace mfdh
