#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfdh/types.hpp"

namespace mfdh {

/// Set of local descriptor vectors of one sample in one modality.
/// Columns of `vectors` are the individual descriptors.
struct DescriptorSet {
    std::string sample_id;
    Matrix vectors;  // d_mod x N, N >= 1

    Index dim() const { return vectors.rows(); }
    Index count() const { return vectors.cols(); }
};

/// k-means codebook: one center per column.
struct Dictionary {
    Matrix centers;  // d_mod x k

    Index dim() const { return centers.rows(); }
    Index size() const { return centers.cols(); }
};

/// The three per-sample views: zeroth order (codebook histogram), first order
/// (mean vector), second order (regularized covariance).
struct MultiViewDescriptor {
    Vector histogram;   // length k, nonnegative, sums to 1
    Vector mean;        // length d_mod
    Matrix covariance;  // d_mod x d_mod, SPD
};

/// Lloyd's k-means with k-means++ seeding over the pooled descriptors of all
/// sets. Deterministic given `seed`: at most 100 iterations, stops when no
/// assignment changes, empty clusters are repaired by stealing the point
/// farthest from its current center.
Dictionary learn_dictionary(const std::vector<DescriptorSet>& sets, Index k, std::uint64_t seed);

/// Normalized occupancy histogram: entry j counts descriptors whose nearest
/// center (Euclidean, ties to the lowest index) is j, divided by the
/// descriptor count.
Vector compute_histogram(const DescriptorSet& set, const Dictionary& dict);

/// Arithmetic mean of the descriptors.
Vector compute_mean(const DescriptorSet& set);

/// Unbiased sample covariance (divisor N-1), symmetrized as (C+C^T)/2 and
/// shifted by eps_spd*I. N == 1 requires eps_spd > 0 and yields eps_spd*I.
Matrix compute_covariance(const DescriptorSet& set, double eps_spd);

MultiViewDescriptor build_multiview(const DescriptorSet& set, const Dictionary& dict,
                                    double eps_spd);

}  // namespace mfdh
