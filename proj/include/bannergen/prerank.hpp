#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/color.hpp"
#include "bannergen/image.hpp"
#include "bannergen/recall.hpp"
#include "bannergen/template_model.hpp"

namespace bannergen {

struct AllTransparent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoDeclaredColor : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ClashExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrerankConfig {
    double clash_saturation = 0.6;  // both colors must exceed this HSV saturation
    double clash_hue_min = 150.0;   // near-complementary hue band, degrees
    double clash_hue_max = 210.0;
    int top_k = 10;                 // diversity quotas apply to this prefix
};

struct ColorProfile {
    // up to 3 (palette name, pixel share) pairs, shares descending
    std::vector<std::pair<std::string, double>> dominant;
    Lab mean_lab;
};

/// Classify every opaque pixel to the named palette and keep the top 3 names
/// by pixel share. Throws AllTransparent when no pixel has alpha > 0.
inline ColorProfile color_profile(const Image& img, const Palette& palette) {
    std::vector<std::int64_t> counts(palette.size(), 0);
    double sum_l = 0, sum_a = 0, sum_b = 0;
    std::int64_t opaque = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.alpha(x, y) == 0) continue;
            ++opaque;
            const Rgb c = img.rgb(x, y);
            counts[static_cast<std::size_t>(palette.index_of(palette.classify(c)))]++;
            const Lab lab = rgb_to_lab(c);
            sum_l += lab.l;
            sum_a += lab.a;
            sum_b += lab.b;
        }
    }
    if (opaque == 0) throw AllTransparent("image has no opaque pixel");

    std::vector<std::size_t> order(palette.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (counts[a] != counts[b]) return counts[a] > counts[b];
        return a < b;  // palette declaration order
    });
    ColorProfile p;
    for (std::size_t i = 0; i < order.size() && p.dominant.size() < 3; ++i) {
        if (counts[order[i]] == 0) break;
        p.dominant.emplace_back(palette.entries()[order[i]].name,
                                double(counts[order[i]]) / double(opaque));
    }
    p.mean_lab = Lab{sum_l / opaque, sum_a / opaque, sum_b / opaque};
    return p;
}

/// Profile over the union of all product cutouts' opaque pixels.
inline ColorProfile combined_color_profile(const std::vector<ProductInput>& products,
                                           const Palette& palette) {
    std::map<std::string, double> weight;
    double total = 0;
    Lab mean{0, 0, 0};
    for (const ProductInput& p : products) {
        const ColorProfile cp = color_profile(p.image, palette);
        const double px = double(p.image.width()) * p.image.height();
        for (const auto& [name, share] : cp.dominant) weight[name] += share * px;
        mean.l += cp.mean_lab.l * px;
        mean.a += cp.mean_lab.a * px;
        mean.b += cp.mean_lab.b * px;
        total += px;
    }
    std::vector<std::pair<std::string, double>> entries(weight.begin(), weight.end());
    for (auto& [name, w] : entries) w /= total;
    std::sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return palette.index_of(a.first) < palette.index_of(b.first);
    });
    if (entries.size() > 3) entries.resize(3);
    ColorProfile p;
    p.dominant = std::move(entries);
    p.mean_lab = Lab{mean.l / total, mean.a / total, mean.b / total};
    return p;
}

/// Template colors the product is compared against: declared product-slot
/// colors when present, else the background color.
inline std::vector<std::string> template_product_colors(const Template& t) {
    std::vector<std::string> colors;
    for (const Layer* l : t.layers_of_kind(LayerKind::Product))
        if (!l->color.empty()) colors.push_back(l->color);
    if (colors.empty()) {
        if (const Layer* bg = t.background(); bg && !bg->color.empty())
            colors.push_back(bg->color);
    }
    return colors;
}

/// 1 - d/d_max with d the share-weighted mean CIELAB distance between the
/// product's dominant anchors and the template's product/background anchors.
inline double color_score(const ColorProfile& product, const Template& t,
                          const Palette& palette) {
    const std::vector<std::string> tpl_colors = template_product_colors(t);
    if (tpl_colors.empty()) throw NoDeclaredColor("template " + t.id + " declares no color");
    double d = 0, share_sum = 0;
    for (const auto& [name, share] : product.dominant) {
        double mean_dist = 0;
        for (const std::string& tc : tpl_colors) mean_dist += palette.distance(name, tc);
        mean_dist /= double(tpl_colors.size());
        d += share * mean_dist;
        share_sum += share;
    }
    if (share_sum > 0) d /= share_sum;
    return std::clamp(1.0 - d / palette.max_distance(), 0.0, 1.0);
}

/// True iff some dominant product color and some declared template layer
/// color form a high-saturation near-complementary pair.
inline bool clash(const ColorProfile& product, const Template& t, const Palette& palette,
                  const PrerankConfig& cfg = {}) {
    std::vector<std::string> tpl_colors;
    for (const Layer& l : t.layers)
        if (!l.color.empty()) tpl_colors.push_back(l.color);
    for (const auto& [pname, share] : product.dominant) {
        (void)share;
        const Hsv ph = rgb_to_hsv(palette.anchor(pname));
        if (ph.s <= cfg.clash_saturation) continue;
        for (const std::string& tname : tpl_colors) {
            const Hsv th = rgb_to_hsv(palette.anchor(tname));
            if (th.s <= cfg.clash_saturation) continue;
            double dh = std::fabs(ph.h - th.h);
            if (dh > 180.0) dh = 360.0 - dh;  // circular distance, [0, 180]
            if (dh >= cfg.clash_hue_min && dh <= cfg.clash_hue_max) return true;
        }
    }
    return false;
}

struct PrerankResult {
    std::string template_id;
    double color_score = 0;
    double recall_total = 0;
    double recall_text = 0;
    double recall_goods = 0;
};

/// Drop clashes, order by color score, then displace entries downward until
/// the returned top-k prefix holds the diversity quotas: at most ceil(k/2)
/// sharing one series_id and at most ceil(k/2) sharing one background color
/// family. Throws ClashExhausted when every candidate clashes.
inline std::vector<PrerankResult> prerank(const std::vector<RecallResult>& recall_results,
                                          const BannerRequest& req,
                                          const TemplateLibrary& library,
                                          const PrerankConfig& cfg = {}) {
    if (recall_results.empty()) throw EmptyRecall("prerank on empty recall list");
    const ColorProfile profile = combined_color_profile(req.products, library.palette);

    std::vector<PrerankResult> scored;
    for (const RecallResult& r : recall_results) {
        const Template* t = library.find(r.template_id);
        if (t == nullptr) continue;
        if (clash(profile, *t, library.palette, cfg)) continue;
        PrerankResult p;
        p.template_id = r.template_id;
        p.color_score = color_score(profile, *t, library.palette);
        p.recall_total = r.total_score;
        p.recall_text = r.text_score;
        p.recall_goods = r.goods_score;
        scored.push_back(std::move(p));
    }
    if (scored.empty()) throw ClashExhausted("every recalled template clashes with the product");

    std::sort(scored.begin(), scored.end(), [](const PrerankResult& a, const PrerankResult& b) {
        if (a.color_score != b.color_score) return a.color_score > b.color_score;
        if (a.recall_total != b.recall_total) return a.recall_total > b.recall_total;
        return a.template_id < b.template_id;
    });

    // diversity pass over the top-k prefix
    const std::size_t k = std::min<std::size_t>(
        scored.size(), cfg.top_k > 0 ? static_cast<std::size_t>(cfg.top_k) : scored.size());
    const std::size_t quota = (k + 1) / 2;  // ceil(k/2)

    std::vector<PrerankResult> selected;
    std::vector<PrerankResult> deferred;
    std::map<std::string, std::size_t> series_count;
    std::map<std::string, std::size_t> family_count;
    for (PrerankResult& r : scored) {
        if (selected.size() >= k) {
            deferred.push_back(std::move(r));
            continue;
        }
        const Template* t = library.find(r.template_id);
        const std::string series = t->series_id;
        const std::string color = t->primary_color();
        const std::string family =
            color.empty() ? std::string() : std::string(library.palette.family(color));
        if (series_count[series] + 1 > quota ||
            (!family.empty() && family_count[family] + 1 > quota)) {
            deferred.push_back(std::move(r));
            continue;
        }
        ++series_count[series];
        if (!family.empty()) ++family_count[family];
        selected.push_back(std::move(r));
    }
    // displaced candidates follow the diverse prefix, original order kept
    selected.insert(selected.end(), std::make_move_iterator(deferred.begin()),
                    std::make_move_iterator(deferred.end()));
    return selected;
}

}  // namespace bannergen
