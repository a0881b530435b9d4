#pragma once

#include <vector>

#include "mfdh/encoder_index.hpp"
#include "mfdh/types.hpp"

namespace mfdh {

enum class RelevanceMode { single_label, multi_label };

/// Ground-truth relevance between query and database items. single_label
/// requires singleton label sets and compares classes; multi_label treats a
/// nonempty label-set intersection as relevant.
class RelevanceJudge {
public:
    RelevanceJudge(RelevanceMode mode, std::vector<std::vector<int>> query_labels,
                   std::vector<std::vector<int>> db_labels);

    bool relevant(std::size_t query_i, std::size_t db_j) const;
    std::size_t query_count() const { return query_labels_.size(); }
    std::size_t db_count() const { return db_labels_.size(); }
    RelevanceMode mode() const { return mode_; }

private:
    RelevanceMode mode_;
    std::vector<std::vector<int>> query_labels_;  // each sorted ascending
    std::vector<std::vector<int>> db_labels_;
};

/// Average precision over the top R entries of a ranked relevance list:
/// (1/l_q) sum_m P(m) delta(m), with l_q the relevant count within top R;
/// 0 when l_q = 0.
double average_precision(const std::vector<bool>& ranked_relevance, std::size_t top_r);

/// Mean of per-query AP over ranked Hamming searches truncated at R
/// (clamped to the database size).
double mean_average_precision(const std::vector<BinaryCode>& queries, const HammingIndex& index,
                              const RelevanceJudge& judge, std::size_t top_r);

struct PrPoint {
    int radius;
    double precision;
    double recall;
};

/// Hash-lookup precision/recall over radii 0..L, micro-averaged across the
/// pooled retrievals of all queries. Radii at which no query retrieves
/// anything are omitted (they can only form a prefix).
struct PrCurve {
    std::vector<PrPoint> points;
    std::vector<int> omitted_radii;
};

PrCurve pr_curve(const std::vector<BinaryCode>& queries, const HammingIndex& index,
                 const RelevanceJudge& judge);

}  // namespace mfdh
