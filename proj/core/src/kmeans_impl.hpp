#pragma once

#include <vector>

#include "mfdh/rng.hpp"
#include "mfdh/types.hpp"

namespace mfdh::detail {

/// Nearest column of `centers` to `point` (squared Euclidean), ties broken by
/// the lowest index.
inline Index nearest_center(const Vector& point, const Matrix& centers) {
    Index best = 0;
    double best_d2 = (point - centers.col(0)).squaredNorm();
    for (Index j = 1; j < centers.cols(); ++j) {
        const double d2 = (point - centers.col(j)).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = j;
        }
    }
    return best;
}

/// Lloyd's k-means over the columns of `points` (d x M), k-means++ seeding
/// from `rng`. At most 100 iterations; stops when the assignment is stable.
/// An empty cluster steals the point farthest from its current center
/// (skipping singleton clusters).
inline Matrix lloyd_kmeans(const Matrix& points, Index k, Rng& rng) {
    const Index m = points.cols();
    const Index d = points.rows();

    Matrix centers(d, k);
    {
        // k-means++: first center uniform, then proportional to squared
        // distance from the chosen set.
        const auto first = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m)));
        centers.col(0) = points.col(first);
        Vector d2(m);
        for (Index i = 0; i < m; ++i) d2(i) = (points.col(i) - centers.col(0)).squaredNorm();
        for (Index c = 1; c < k; ++c) {
            const double total = d2.sum();
            Index pick = 0;
            if (total > 0.0) {
                const double r = rng.next_unit() * total;
                double cum = 0.0;
                pick = m - 1;
                for (Index i = 0; i < m; ++i) {
                    cum += d2(i);
                    if (cum > r) {
                        pick = i;
                        break;
                    }
                }
            } else {
                // all remaining points coincide with chosen centers
                pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m)));
            }
            centers.col(c) = points.col(pick);
            for (Index i = 0; i < m; ++i)
                d2(i) = std::min(d2(i), (points.col(i) - centers.col(c)).squaredNorm());
        }
    }

    std::vector<Index> assign(static_cast<std::size_t>(m), 0);
    std::vector<Index> prev;
    for (int iter = 0; iter < 100; ++iter) {
        for (Index i = 0; i < m; ++i)
            assign[static_cast<std::size_t>(i)] = nearest_center(points.col(i), centers);
        if (iter > 0 && assign == prev) break;

        std::vector<Index> counts(static_cast<std::size_t>(k), 0);
        for (Index a : assign) ++counts[static_cast<std::size_t>(a)];
        for (Index j = 0; j < k; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0) continue;
            Index farthest = -1;
            double far_d2 = -1.0;
            for (Index i = 0; i < m; ++i) {
                const Index a = assign[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(a)] <= 1) continue;
                const double d2 = (points.col(i) - centers.col(a)).squaredNorm();
                if (d2 > far_d2) {
                    far_d2 = d2;
                    farthest = i;
                }
            }
            if (farthest < 0) continue;  // nothing stealable
            --counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(farthest)])];
            assign[static_cast<std::size_t>(farthest)] = j;
            ++counts[static_cast<std::size_t>(j)];
        }

        centers.setZero();
        for (Index i = 0; i < m; ++i) centers.col(assign[static_cast<std::size_t>(i)]) += points.col(i);
        for (Index j = 0; j < k; ++j)
            if (counts[static_cast<std::size_t>(j)] > 0)
                centers.col(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
        prev = assign;
    }
    return centers;
}

}  // namespace mfdh::detail
