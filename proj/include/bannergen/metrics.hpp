#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/gbdt.hpp"  // SingleClass

namespace bannergen {

/// Exact pair-counting AUC via rank sums; ties contribute 0.5. Equivalent to
/// the probability that a random positive outranks a random negative.
inline double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw std::invalid_argument("auc: size mismatch");
    const std::size_t n = scores.size();
    std::int64_t n_pos = 0;
    for (int y : labels) n_pos += y ? 1 : 0;
    const std::int64_t n_neg = std::int64_t(n) - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("auc needs both classes");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // average ranks across tie groups (1-based)
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg = (double(i + 1) + double(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    double rank_sum_pos = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (labels[k]) rank_sum_pos += rank[k];
    const double u = rank_sum_pos - double(n_pos) * double(n_pos + 1) / 2.0;
    return u / (double(n_pos) * double(n_neg));
}

inline double accuracy(const std::vector<double>& scores, const std::vector<int>& labels,
                       double threshold = 0.5) {
    if (scores.size() != labels.size() || scores.empty())
        throw std::invalid_argument("accuracy: size mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if ((scores[i] > threshold ? 1 : 0) == labels[i]) ++correct;
    return double(correct) / double(scores.size());
}

struct MetricReport {
    double accuracy = 0;
    double auc = 0;
    std::size_t samples = 0;
    double positive_rate = 0;

    std::string to_string() const {
        std::ostringstream os;
        os << "samples=" << samples << " positive_rate=" << positive_rate
           << " accuracy=" << accuracy << " auc=" << auc;
        return os.str();
    }
};

inline MetricReport evaluate_scores(const std::vector<double>& scores,
                                    const std::vector<int>& labels) {
    MetricReport r;
    r.samples = scores.size();
    std::int64_t pos = 0;
    for (int y : labels) pos += y ? 1 : 0;
    r.positive_rate = labels.empty() ? 0.0 : double(pos) / double(labels.size());
    r.accuracy = accuracy(scores, labels);
    r.auc = auc(scores, labels);
    return r;
}

}  // namespace bannergen
