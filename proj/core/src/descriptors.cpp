#include "mfdh/descriptors.hpp"

#include "mfdh/errors.hpp"
#include "mfdh/rng.hpp"
#include "kmeans_impl.hpp"

namespace mfdh {

namespace {

void require_nonempty(const DescriptorSet& set) {
    if (set.count() < 1)
        throw invalid_argument("descriptor set '" + set.sample_id + "' has no descriptors");
}

}  // namespace

Dictionary learn_dictionary(const std::vector<DescriptorSet>& sets, Index k, std::uint64_t seed) {
    if (k < 1) throw invalid_argument("learn_dictionary: k must be >= 1");
    if (sets.empty()) throw invalid_argument("learn_dictionary: no descriptor sets");

    const Index dim = sets.front().dim();
    Index total = 0;
    for (const auto& set : sets) {
        if (set.dim() != dim)
            throw invalid_argument("learn_dictionary: descriptor dimension mismatch");
        total += set.count();
    }
    if (total < k)
        throw invalid_argument("learn_dictionary: fewer pooled descriptors than k");

    Matrix pooled(dim, total);
    Index at = 0;
    for (const auto& set : sets) {
        pooled.middleCols(at, set.count()) = set.vectors;
        at += set.count();
    }

    Rng rng(seed);
    return Dictionary{detail::lloyd_kmeans(pooled, k, rng)};
}

Vector compute_histogram(const DescriptorSet& set, const Dictionary& dict) {
    require_nonempty(set);
    if (set.dim() != dict.dim())
        throw invalid_argument("compute_histogram: descriptor/dictionary dimension mismatch");

    Vector hist = Vector::Zero(dict.size());
    for (Index i = 0; i < set.count(); ++i)
        hist(detail::nearest_center(set.vectors.col(i), dict.centers)) += 1.0;
    hist /= static_cast<double>(set.count());
    return hist;
}

Vector compute_mean(const DescriptorSet& set) {
    require_nonempty(set);
    return set.vectors.rowwise().mean();
}

Matrix compute_covariance(const DescriptorSet& set, double eps_spd) {
    require_nonempty(set);
    if (eps_spd < 0.0) throw invalid_argument("compute_covariance: eps_spd must be >= 0");

    const Index d = set.dim();
    const Index n = set.count();
    if (n == 1) {
        if (eps_spd == 0.0)
            throw degenerate_covariance("compute_covariance: single descriptor with eps_spd = 0");
        return eps_spd * Matrix::Identity(d, d);
    }

    const Vector mean = compute_mean(set);
    const Matrix centered = set.vectors.colwise() - mean;
    Matrix cov = centered * centered.transpose() / static_cast<double>(n - 1);
    cov = 0.5 * (cov + cov.transpose());
    cov.diagonal().array() += eps_spd;
    return cov;
}

MultiViewDescriptor build_multiview(const DescriptorSet& set, const Dictionary& dict,
                                    double eps_spd) {
    return MultiViewDescriptor{
        compute_histogram(set, dict),
        compute_mean(set),
        compute_covariance(set, eps_spd),
    };
}

}  // namespace mfdh
