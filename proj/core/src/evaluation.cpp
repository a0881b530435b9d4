#include "mfdh/evaluation.hpp"

#include <algorithm>

#include "mfdh/errors.hpp"

namespace mfdh {

namespace {

void sort_unique(std::vector<std::vector<int>>& sets) {
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return false;
}

}  // namespace

RelevanceJudge::RelevanceJudge(RelevanceMode mode, std::vector<std::vector<int>> query_labels,
                               std::vector<std::vector<int>> db_labels)
    : mode_(mode), query_labels_(std::move(query_labels)), db_labels_(std::move(db_labels)) {
    sort_unique(query_labels_);
    sort_unique(db_labels_);
    const auto check = [&](const std::vector<std::vector<int>>& sets) {
        for (const auto& s : sets) {
            if (s.empty()) throw invalid_argument("RelevanceJudge: empty label set");
            if (mode_ == RelevanceMode::single_label && s.size() != 1)
                throw invalid_argument("RelevanceJudge: single_label requires one label per item");
        }
    };
    check(query_labels_);
    check(db_labels_);
}

bool RelevanceJudge::relevant(std::size_t query_i, std::size_t db_j) const {
    const auto& q = query_labels_.at(query_i);
    const auto& d = db_labels_.at(db_j);
    if (mode_ == RelevanceMode::single_label) return q.front() == d.front();
    return intersects(q, d);
}

double average_precision(const std::vector<bool>& ranked_relevance, std::size_t top_r) {
    if (top_r < 1) throw invalid_argument("average_precision: R must be >= 1");
    if (top_r > ranked_relevance.size())
        throw invalid_argument("average_precision: R exceeds ranking length");
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t m = 0; m < top_r; ++m) {
        if (!ranked_relevance[m]) continue;
        ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(m + 1);
    }
    return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

double mean_average_precision(const std::vector<BinaryCode>& queries, const HammingIndex& index,
                              const RelevanceJudge& judge, std::size_t top_r) {
    if (queries.empty()) throw invalid_argument("mean_average_precision: no queries");
    if (index.size() == 0) throw invalid_argument("mean_average_precision: empty database");
    if (judge.query_count() != queries.size() || judge.db_count() != index.size())
        throw invalid_argument("mean_average_precision: judge/collection size mismatch");

    const std::size_t r_eff = std::min(top_r, index.size());
    std::vector<double> per_query(queries.size());
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        const auto hits = search_ranked(queries[qi], index, r_eff);
        std::vector<bool> rel(hits.size());
        for (std::size_t m = 0; m < hits.size(); ++m) rel[m] = judge.relevant(qi, hits[m].item);
        per_query[qi] = average_precision(rel, r_eff);
    }
    // summing in sorted order makes the mean independent of query order
    std::sort(per_query.begin(), per_query.end());
    double total = 0.0;
    for (const double ap : per_query) total += ap;
    return total / static_cast<double>(per_query.size());
}

PrCurve pr_curve(const std::vector<BinaryCode>& queries, const HammingIndex& index,
                 const RelevanceJudge& judge) {
    if (queries.empty()) throw invalid_argument("pr_curve: no queries");
    if (judge.query_count() != queries.size() || judge.db_count() != index.size())
        throw invalid_argument("pr_curve: judge/collection size mismatch");

    const auto radii = static_cast<std::size_t>(index.code_length) + 1;
    std::vector<long long> retrieved(radii, 0), retrieved_rel(radii, 0);
    long long total_relevant = 0;

    // per query: bucket database items by distance, then prefix-sum over radii
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        std::vector<long long> cnt(radii, 0), rel(radii, 0);
        for (std::size_t j = 0; j < index.size(); ++j) {
            const auto d = static_cast<std::size_t>(hamming_distance(queries[qi], index.codes[j]));
            ++cnt[d];
            if (judge.relevant(qi, j)) {
                ++rel[d];
                ++total_relevant;
            }
        }
        long long c = 0, r = 0;
        for (std::size_t d = 0; d < radii; ++d) {
            c += cnt[d];
            r += rel[d];
            retrieved[d] += c;
            retrieved_rel[d] += r;
        }
    }

    PrCurve curve;
    for (std::size_t d = 0; d < radii; ++d) {
        if (retrieved[d] == 0) {
            curve.omitted_radii.push_back(static_cast<int>(d));
            continue;
        }
        const double precision =
            static_cast<double>(retrieved_rel[d]) / static_cast<double>(retrieved[d]);
        const double recall = total_relevant == 0
                                  ? 0.0
                                  : static_cast<double>(retrieved_rel[d]) /
                                        static_cast<double>(total_relevant);
        curve.points.push_back(PrPoint{static_cast<int>(d), precision, recall});
    }
    return curve;
}

}  // namespace mfdh
