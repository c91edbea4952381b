#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/image.hpp"
#include "bannergen/size_expand.hpp"
#include "bannergen/template_model.hpp"
#include "bannergen/text_util.hpp"

namespace bannergen {

struct EmptyRecall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroSlots : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text-loss constants. alpha1 and alpha3 are derived from the word-count
/// bounds, never hard-coded: alpha1 = 2.2*(max-min)+1, alpha3 = alpha1*
/// (max_lines-1) + 2.2*(max-min). With the default bounds 4/20 this gives
/// 36.2 and 107.6 and the worst case (loss1=2, loss2=-16) scores exactly 0.
struct RecallConfig {
    int wordnummin = 4;
    int wordnummax = 20;
    double alpha2_pos = 2.0;
    double alpha2_neg = -2.2;
    int max_lines = 3;
    double text_weights = 0.6;
    double goods_weights = 0.4;
    int top_k = 10;

    double alpha1() const { return -alpha2_neg * (wordnummax - wordnummin) + 1.0; }
    double alpha3() const {
        return alpha1() * (max_lines - 1) + (-alpha2_neg) * (wordnummax - wordnummin);
    }
};

struct ProductInput {
    Image image;          // RGBA cutout
    std::string category; // product category tag
};

struct BannerRequest {
    std::vector<ProductInput> products;
    std::vector<std::string> texts;  // role order: main, sub, action
    int target_width = 0;
    int target_height = 0;
    int department_id = 0;
    std::string style_hint;  // optional
    std::uint64_t seed = 0;

    double avg_word_count() const {
        if (texts.empty()) return 0.0;
        int sum = 0;
        for (const auto& t : texts) sum += word_count(t);
        return double(sum) / double(texts.size());
    }
};

/// Validate request invariants; returns a human-readable complaint or empty.
inline std::string validate_request(const BannerRequest& req, const RecallConfig& cfg) {
    if (req.texts.empty() || req.texts.size() > 3) return "texts must have 1-3 lines";
    for (const auto& t : req.texts) {
        const int wc = word_count(t);
        if (wc < 1 || wc > cfg.wordnummax)
            return "text line '" + t + "' word count " + std::to_string(wc) +
                   " outside [1, " + std::to_string(cfg.wordnummax) + "]";
    }
    if (req.products.empty()) return "at least one product required";
    if (req.target_width <= 0 || req.target_height <= 0) return "target size must be positive";
    return {};
}

struct RecallResult {
    std::string template_id;
    double text_score = 0;
    double goods_score = 0;
    double total_score = 0;
};

/// score = 1 - (alpha1*loss1 + alpha2*loss2)/alpha3, clamped to [0,1].
/// loss1 is the line-count difference; loss2 = template avg capacity minus
/// request avg word count, penalized asymmetrically so templates with a
/// little more room score above equally-mismatched tighter ones.
inline double text_score(const std::vector<std::string>& req_texts, const Template& t,
                         const RecallConfig& cfg) {
    int words = 0;
    for (const auto& s : req_texts) words += word_count(s);
    const double req_avg = req_texts.empty() ? 0.0 : double(words) / double(req_texts.size());
    const double loss1 = std::abs(int(req_texts.size()) - t.text_line_count);
    const double loss2 = t.avg_word_capacity - req_avg;
    const double a2 = loss2 > 0 ? cfg.alpha2_pos : (loss2 < 0 ? cfg.alpha2_neg : 0.0);
    const double score = 1.0 - (cfg.alpha1() * loss1 + a2 * loss2) / cfg.alpha3();
    return std::clamp(score, 0.0, 1.0);
}

/// count_factor x aspect_fit: slot-count mismatch shrinks the score
/// hyperbolically; matched (product, slot) pairs are compared by aspect
/// ratio, pairing both sides in descending aspect order.
inline double goods_score(const std::vector<double>& product_aspects, const Template& t) {
    if (product_aspects.empty()) throw std::invalid_argument("no products");
    std::vector<double> slot_aspects;
    for (const Layer* l : t.layers_of_kind(LayerKind::Product))
        slot_aspects.push_back(l->aspect());
    if (slot_aspects.empty()) throw ZeroSlots("template " + t.id + " has no product slot");

    std::vector<double> prods = product_aspects;
    std::sort(prods.begin(), prods.end(), std::greater<>());
    std::sort(slot_aspects.begin(), slot_aspects.end(), std::greater<>());

    const std::size_t m = std::min(prods.size(), slot_aspects.size());
    double fit = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = prods[i], b = slot_aspects[i];
        fit += std::min(a, b) / std::max(a, b);
    }
    fit /= double(m);
    const double count_factor =
        1.0 / (1.0 + std::abs(double(prods.size()) - double(slot_aspects.size())));
    return count_factor * fit;
}

inline double goods_score(const BannerRequest& req, const Template& t) {
    std::vector<double> aspects;
    for (const ProductInput& p : req.products)
        aspects.push_back(double(p.image.width()) / double(p.image.height()));
    return goods_score(aspects, t);
}

/// Feature-dimension screening: department, category, style hint and the
/// 30-degree aspect gate. Throws EmptyRecall when nothing survives.
inline std::vector<const Template*> screen(const TemplateLibrary& library,
                                           const BannerRequest& req) {
    std::vector<const Template*> out;
    std::vector<std::string> req_categories;
    for (const ProductInput& p : req.products)
        if (!p.category.empty()) req_categories.push_back(p.category);

    for (const Template& t : library.templates) {
        if (!t.department_ids.empty() &&
            std::find(t.department_ids.begin(), t.department_ids.end(), req.department_id) ==
                t.department_ids.end())
            continue;
        if (!req.style_hint.empty() &&
            std::find(t.style_tags.begin(), t.style_tags.end(), req.style_hint) ==
                t.style_tags.end())
            continue;
        if (!req_categories.empty() && !t.category_tags.empty()) {
            bool any = false;
            for (const auto& c : req_categories)
                if (std::find(t.category_tags.begin(), t.category_tags.end(), c) !=
                    t.category_tags.end()) {
                    any = true;
                    break;
                }
            if (!any) continue;
        }
        if (!req.products.empty() && t.product_slot_count == 0) continue;
        if (!aspect_gate(t.width, t.height, req.target_width, req.target_height)) continue;
        out.push_back(&t);
    }
    if (out.empty()) throw EmptyRecall("no compatible template");
    return out;
}

/// Screen, score, and return the top_k templates by weighted total score.
/// Ties break by template id ascending, so the result is deterministic.
inline std::vector<RecallResult> recall_topk(const TemplateLibrary& library,
                                             const BannerRequest& req, const RecallConfig& cfg) {
    std::vector<RecallResult> results;
    for (const Template* t : screen(library, req)) {
        RecallResult r;
        r.template_id = t->id;
        r.text_score = text_score(req.texts, *t, cfg);
        r.goods_score = goods_score(req, *t);
        r.total_score = cfg.text_weights * r.text_score + cfg.goods_weights * r.goods_score;
        results.push_back(std::move(r));
    }
    std::sort(results.begin(), results.end(), [](const RecallResult& a, const RecallResult& b) {
        if (a.total_score != b.total_score) return a.total_score > b.total_score;
        return a.template_id < b.template_id;
    });
    if (cfg.top_k > 0 && results.size() > static_cast<std::size_t>(cfg.top_k))
        results.resize(static_cast<std::size_t>(cfg.top_k));
    return results;
}

}  // namespace bannergen
