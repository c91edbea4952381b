#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannergen/adjuster.hpp"
#include "bannergen/banner.hpp"
#include "bannergen/config.hpp"
#include "bannergen/product_layout.hpp"
#include "bannergen/rank.hpp"
#include "bannergen/render.hpp"
#include "bannergen/size_expand.hpp"
#include "bannergen/textnet.hpp"
#include "bannergen/typesetting.hpp"

namespace bannergen {

/// Training samples mined from the template library for the text-layout
/// net: features from capacities (all-lowercase placeholder copy), width
/// targets from geometry, labels from the form classifier.
inline std::vector<TextSample> text_samples_from_library(const TemplateLibrary& lib) {
    std::vector<TextSample> samples;
    for (const Template& t : lib.templates) {
        const Rect area = t.text_area();
        if (area.w <= 0 || area.h <= 0) continue;
        std::vector<std::string> texts;
        std::vector<double> widths, mask;
        double font = 0;
        for (const LayerKind role :
             {LayerKind::TextMain, LayerKind::TextSub, LayerKind::TextAction}) {
            const Layer* l = nullptr;
            for (const Layer& cand : t.layers)
                if (cand.kind == role) l = &cand;
            if (l == nullptr) continue;
            texts.push_back(std::string(std::size_t(l->capacity), 'x'));
            widths.push_back(l->bbox.w / area.w);
            mask.push_back(1.0);
            if (font == 0) font = l->font_size;
        }
        if (texts.empty()) continue;
        TextSample s;
        s.features = text_features(texts, double(t.width), font);
        s.widths = widths;
        s.width_mask = mask;
        s.form = int(label_template_form(t));
        samples.push_back(std::move(s));
    }
    return samples;
}

struct TextLayoutChoice {
    std::vector<Rect> boxes;
    TypesettingForm form = TypesettingForm::CenteredSingle;
};

/// Reconstruct the text area: net widths denormalized against the area,
/// classification head picks the form, the form's anchor rules generate the
/// line boxes. Without a trained net, geometry falls back to the template's
/// own form and capacity-proportional widths, so the pipeline can run cold.
inline TextLayoutChoice layout_text(const TextLayoutNet* net,
                                    const std::vector<std::string>& texts, const Template& t) {
    const Rect area = t.text_area();
    TextLayoutChoice out;
    std::vector<double> widths;
    if (net != nullptr && net->input_dim() == kTextFeatureDim) {
        double font = 0;
        for (const Layer& l : t.layers)
            if (is_text(l.kind) && font == 0) font = l.font_size;
        const TextLayoutNet::Output o = net->forward(text_features(texts, double(t.width), font));
        out.form = TypesettingForm(o.form_argmax);
        for (std::size_t i = 0; i < texts.size() && i < 3; ++i)
            widths.push_back(o.widths[i] * area.w);
    } else {
        out.form = label_template_form(t);
        for (const std::string& s : texts)
            widths.push_back(std::min(1.0, char_count(s) / 20.0) * area.w);
    }
    out.boxes = form_line_boxes(out.form, widths, area);
    return out;
}

/// Assemble the placed-layer stack: template chrome (background, logo,
/// ornaments) plus request products in their generated slots and request
/// texts in their generated line boxes. Masks and bound ornaments follow
/// their anchor layer; ones whose anchor is gone are dropped.
inline CandidateBanner instantiate_banner(const Template& expanded, const BannerRequest& req,
                                          const TextLayoutChoice& text_layout,
                                          const ProductPlacement& products) {
    CandidateBanner banner;
    banner.width = expanded.width;
    banner.height = expanded.height;
    banner.template_id = expanded.id;
    banner.series_id = expanded.series_id;
    banner.primary_color = expanded.primary_color();
    banner.form = text_layout.form;
    banner.product_layout = products.layout;
    banner.seed = req.seed;

    const char* role_names[] = {"text-main", "text-sub", "text-action"};
    const LayerKind role_kinds[] = {LayerKind::TextMain, LayerKind::TextSub,
                                    LayerKind::TextAction};

    // text lines present in the request, in role order
    std::map<std::string, Rect> new_text_bbox;
    std::map<std::string, Rect> new_product_bbox;

    auto text_color = [&](LayerKind role) -> std::string {
        for (const Layer& l : expanded.layers)
            if (l.kind == role && !l.color.empty()) return l.color;
        for (const Layer& l : expanded.layers)
            if (is_text(l.kind) && !l.color.empty()) return l.color;
        return "black";
    };

    bool products_emitted = false;
    bool texts_emitted = false;
    for (const Layer& src : expanded.layers) {
        if (src.kind == LayerKind::Product) {
            if (products_emitted) continue;
            products_emitted = true;
            for (std::size_t i = 0; i < products.slots.size(); ++i) {
                PlacedLayer p;
                p.name = "product-" + std::to_string(i + 1);
                p.kind = LayerKind::Product;
                p.bbox = products.slots[i].bbox;
                p.rotation_deg = products.slots[i].rotation_deg;
                p.product_index = int(i);
                p.z = int(banner.layers.size());
                banner.layers.push_back(p);
                new_product_bbox[p.name] = p.bbox;
            }
            continue;
        }
        if (is_text(src.kind)) {
            if (texts_emitted) continue;
            texts_emitted = true;
            for (std::size_t i = 0; i < req.texts.size() && i < text_layout.boxes.size(); ++i) {
                PlacedLayer tl;
                tl.name = role_names[i];
                tl.kind = role_kinds[i];
                tl.bbox = text_layout.boxes[i];
                tl.text = req.texts[i];
                tl.font_size = 0.72 * tl.bbox.h;
                tl.color = text_color(role_kinds[i]);
                tl.z = int(banner.layers.size());
                banner.layers.push_back(tl);
                new_text_bbox[tl.name] = tl.bbox;
            }
            continue;
        }
        if (is_mask(src.kind) || src.kind == LayerKind::OrnamentFree) {
            // follows its bound layer into the new geometry
            const Layer* anchor = src.bound_to.empty() ? nullptr : expanded.find_layer(src.bound_to);
            Rect new_anchor;
            bool anchor_alive = false;
            if (anchor != nullptr) {
                if (auto it = new_text_bbox.find(anchor->name); it != new_text_bbox.end()) {
                    new_anchor = it->second;
                    anchor_alive = true;
                } else if (auto jt = new_product_bbox.find(anchor->name);
                           jt != new_product_bbox.end()) {
                    new_anchor = jt->second;
                    anchor_alive = true;
                }
                if (!anchor_alive) continue;  // anchor dropped with the request shape
                PlacedLayer m;
                m.name = src.name;
                m.kind = src.kind;
                m.color = src.color;
                m.opacity = src.opacity;
                m.asset_ref = src.asset_ref;
                m.bound_to = src.bound_to;
                const Rect& ob = anchor->bbox;
                const double rw = ob.w > 0 ? src.bbox.w / ob.w : 1.0;
                const double rh = ob.h > 0 ? src.bbox.h / ob.h : 1.0;
                const double ox = ob.w > 0 ? (src.bbox.cx() - ob.cx()) / ob.w : 0.0;
                const double oy = ob.h > 0 ? (src.bbox.cy() - ob.cy()) / ob.h : 0.0;
                const double w = rw * new_anchor.w;
                const double h = rh * new_anchor.h;
                Rect nb{new_anchor.cx() + ox * new_anchor.w - w / 2,
                        new_anchor.cy() + oy * new_anchor.h - h / 2, w, h};
                m.bbox = clamp_into(nb, Rect{0, 0, double(expanded.width), double(expanded.height)});
                m.z = int(banner.layers.size());
                banner.layers.push_back(m);
                continue;
            }
            // unbound free ornament: carried over untouched
        }
        PlacedLayer pl;
        pl.name = src.name;
        pl.kind = src.kind;
        pl.bbox = src.bbox;
        pl.color = src.color;
        pl.opacity = src.opacity;
        pl.asset_ref = src.asset_ref;
        pl.bound_to = src.bound_to;
        pl.z = int(banner.layers.size());
        banner.layers.push_back(pl);
    }
    banner.sort_layers();
    return banner;
}

struct SynthOutput {
    Image image;
    nlohmann::json provenance;
    CandidateBanner banner;
};

/// Loaded engine state shared across requests. Read-only after load, so
/// batch workers can synthesize in parallel against one instance.
struct Engine {
    EngineConfig config;
    TemplateLibrary library;
    std::optional<ElementLibrary> elements;
    std::optional<RankModel> rank_model;
    std::optional<TextLayoutNet> textnet;

    static Engine load(EngineConfig cfg) {
        Engine e;
        e.library = load_library(cfg.template_library);
        if (!cfg.element_library.empty())
            e.elements = load_element_library(cfg.element_library);
        if (!cfg.rank_model.empty()) e.rank_model = load_rank_model(cfg.rank_model.string());
        if (!cfg.textnet_model.empty())
            e.textnet = TextLayoutNet::load(cfg.textnet_model.string());
        e.config = std::move(cfg);
        return e;
    }

    RenderContext render_context(const BannerRequest& req) const {
        RenderContext ctx;
        ctx.assets = library.assets.get();
        ctx.element_assets = elements.has_value() ? elements->store.get() : nullptr;
        ctx.products = &req.products;
        ctx.palette = &library.palette;
        return ctx;
    }

    /// Full pipeline for one request; returns the top `variants` banners
    /// from distinct templates.
    std::vector<SynthOutput> synth(const BannerRequest& req, int variants = 1) const {
        using clock = std::chrono::steady_clock;
        auto ms_since = [](clock::time_point t0) {
            return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        };

        if (const std::string err = validate_request(req, config.recall); !err.empty())
            throw std::invalid_argument("invalid request: " + err);

        std::map<std::string, double> timings;
        const auto t_total = clock::now();

        auto t0 = clock::now();
        const std::vector<RecallResult> recalled = recall_topk(library, req, config.recall);
        timings["recall"] = ms_since(t0);

        t0 = clock::now();
        const std::vector<PrerankResult> preranked =
            prerank(recalled, req, library, config.prerank);
        timings["prerank"] = ms_since(t0);

        t0 = clock::now();
        const RankModel* model = rank_model.has_value() ? &*rank_model : nullptr;
        const std::vector<RankedCandidate> ranked =
            rank_candidates(model, preranked, req, library);
        timings["rank"] = ms_since(t0);

        const RenderContext ctx = render_context(req);
        std::vector<SynthOutput> outputs;
        for (const RankedCandidate& cand : ranked) {
            if (int(outputs.size()) >= variants) break;
            const Template* base = library.find(cand.template_id);

            t0 = clock::now();
            const Template expanded = expand_size(*base, req.target_width, req.target_height);
            timings["expand"] = ms_since(t0);

            t0 = clock::now();
            const TextLayoutChoice text_choice =
                layout_text(textnet.has_value() ? &*textnet : nullptr, req.texts, expanded);
            std::vector<double> aspects, areas;
            for (const ProductInput& p : req.products) {
                aspects.push_back(double(p.image.width()) / double(p.image.height()));
                areas.push_back(double(p.image.width()) * double(p.image.height()));
            }
            const ProductPlacement placement =
                layout_products(aspects, areas, expanded.product_area());
            CandidateBanner banner = instantiate_banner(expanded, req, text_choice, placement);
            banner.scores.recall_text = cand.recall_text;
            banner.scores.recall_goods = cand.recall_goods;
            banner.scores.recall_total = cand.recall_total;
            banner.scores.color_score = cand.color_score;
            banner.scores.rank_score = cand.rank_score;
            banner.scores.unranked = cand.unranked;
            timings["layout"] = ms_since(t0);

            t0 = clock::now();
            if (elements.has_value())
                retrieve_elements(banner, *elements, base->style_tags, library.palette);
            timings["elements"] = ms_since(t0);

            t0 = clock::now();
            finetune(banner, ctx, config.eval_weights, req.seed + outputs.size(),
                     config.adjuster);
            timings["adjust"] = ms_since(t0);

            t0 = clock::now();
            RenderStats stats;
            Image image = composite(banner, ctx, &stats);
            timings["render"] = ms_since(t0);
            timings["total"] = ms_since(t_total);

            SynthOutput out;
            out.provenance = make_provenance(banner, req, stats, timings);
            out.image = std::move(image);
            out.banner = std::move(banner);
            outputs.push_back(std::move(out));
        }
        return outputs;
    }

    static nlohmann::json make_provenance(const CandidateBanner& banner,
                                          const BannerRequest& req, const RenderStats& stats,
                                          const std::map<std::string, double>& timings) {
        nlohmann::json p;
        p["schema_version"] = kSchemaVersion;
        p["template_id"] = banner.template_id;
        p["series_id"] = banner.series_id;
        p["target"] = {banner.width, banner.height};
        p["seed"] = banner.seed;
        p["request"] = {{"texts", req.texts},
                        {"products", req.products.size()},
                        {"department_id", req.department_id}};
        p["typesetting_form"] = form_name(banner.form);
        p["product_layout"] = product_layout_name(banner.product_layout);
        p["scores"] = {{"recall_text", banner.scores.recall_text},
                       {"recall_goods", banner.scores.recall_goods},
                       {"recall_total", banner.scores.recall_total},
                       {"color_score", banner.scores.color_score},
                       {"rank_score", banner.scores.rank_score},
                       {"unranked", banner.scores.unranked},
                       {"adjuster_energy", banner.scores.adjuster_energy}};
        p["substitutions"] = nlohmann::json::array();
        for (const auto& [layer, asset] : banner.substitutions)
            p["substitutions"].push_back({{"layer", layer}, {"element", asset}});
        p["action_trace"] = nlohmann::json::array();
        for (const AppliedAction& a : banner.action_trace)
            p["action_trace"].push_back({{"action", a.description}, {"score", a.score_after}});
        p["warnings"] = {{"missing_glyphs", stats.missing_glyphs}};
        p["timings_ms"] = timings;
        return p;
    }
};

}  // namespace bannergen
