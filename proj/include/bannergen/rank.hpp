#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bannergen/click_data.hpp"
#include "bannergen/features.hpp"
#include "bannergen/gbdt.hpp"
#include "bannergen/prerank.hpp"

namespace bannergen {

struct RankedCandidate {
    std::string template_id;
    double rank_score = 0;  // click probability; prerank color score when unranked
    double color_score = 0;
    double recall_total = 0;
    double recall_text = 0;
    double recall_goods = 0;
    bool unranked = false;  // true on the cold-start pass-through path
};

/// Creative ranking over the pre-rank survivors. Without a trained model the
/// pipeline must still synthesize, so candidates pass through in pre-rank
/// order flagged "unranked".
inline std::vector<RankedCandidate> rank_candidates(const RankModel* model,
                                                    const std::vector<PrerankResult>& candidates,
                                                    const BannerRequest& req,
                                                    const TemplateLibrary& library) {
    std::vector<RankedCandidate> out;
    out.reserve(candidates.size());
    for (const PrerankResult& c : candidates) {
        RankedCandidate rc;
        rc.template_id = c.template_id;
        rc.color_score = c.color_score;
        rc.recall_total = c.recall_total;
        rc.recall_text = c.recall_text;
        rc.recall_goods = c.recall_goods;
        if (model == nullptr || model->empty()) {
            rc.unranked = true;
            rc.rank_score = c.color_score;
            out.push_back(std::move(rc));
            continue;
        }
        const Template* t = library.find(c.template_id);
        const FeatureVector fv = featurize(*t, req.texts, req.department_id, c.recall_total,
                                           c.color_score, model->space, library.palette);
        rc.rank_score = gbdt_score(*model, fv);
        out.push_back(std::move(rc));
    }
    if (model != nullptr && !model->empty()) {
        std::stable_sort(out.begin(), out.end(),
                         [](const RankedCandidate& a, const RankedCandidate& b) {
                             if (a.rank_score != b.rank_score) return a.rank_score > b.rank_score;
                             if (a.color_score != b.color_score) return a.color_score > b.color_score;
                             if (a.recall_total != b.recall_total) return a.recall_total > b.recall_total;
                             return a.template_id < b.template_id;
                         });
    }
    return out;
}

/// Join bucketed click labels with template features. Training rows carry
/// no request copy or stage scores — those segments stay zero.
inline std::pair<std::vector<std::vector<double>>, std::vector<int>> assemble_training_rows(
    const std::vector<LabeledSample>& samples, const TemplateLibrary& library,
    const FeatureSpace& space) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (const LabeledSample& s : samples) {
        const Template* t = library.find(s.template_id);
        if (t == nullptr) continue;  // stale log line
        rows.push_back(
            featurize(*t, {}, 0, 0.0, 0.0, space, library.palette).values);
        labels.push_back(s.label);
    }
    return {std::move(rows), std::move(labels)};
}

/// End-to-end training from a click log: bucket labels on the selected
/// periods, build the feature space from the library plus an optional text
/// corpus, and boost.
inline RankModel train_rank_model(const std::vector<ClickRecord>& log,
                                  const TemplateLibrary& library, const GbdtHyper& hyper,
                                  const std::vector<std::string>& text_corpus = {},
                                  int period_min = std::numeric_limits<int>::min(),
                                  int period_max = std::numeric_limits<int>::max()) {
    std::vector<ClickRecord> in_range;
    for (const ClickRecord& r : log)
        if (r.period_id >= period_min && r.period_id <= period_max) in_range.push_back(r);
    const BucketResult buckets = bucket_labels(in_range);

    FeatureSpace space;
    std::vector<const Template*> tpls;
    for (const Template& t : library.templates) tpls.push_back(&t);
    build_dictionaries(space, tpls);
    std::vector<std::vector<std::string>> docs;
    for (const std::string& doc : text_corpus) docs.push_back(tokenize(doc));
    build_vocabulary(space, docs);

    auto [rows, labels] = assemble_training_rows(buckets.samples, library, space);
    RankModel model = train_gbdt(rows, labels, hyper);
    model.space = std::move(space);
    model.metadata = "periods=" + std::to_string(period_min == std::numeric_limits<int>::min()
                                                     ? 0
                                                     : period_min) +
                     ".." +
                     std::to_string(period_max == std::numeric_limits<int>::max() ? 0
                                                                                  : period_max) +
                     " samples=" + std::to_string(labels.size()) +
                     " skipped_periods=" + std::to_string(buckets.skipped_periods);
    return model;
}

}  // namespace bannergen
