#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannergen/banner.hpp"
#include "bannergen/render.hpp"
#include "bannergen/rng.hpp"

namespace bannergen {

struct ElementAsset {
    std::string id;
    LayerKind kind = LayerKind::Unknown;  // ornament / mask subtypes only
    std::vector<std::string> style_tags;
    std::string palette_color;
    std::string path;  // relative to the element library root
};

struct ElementLibrary {
    std::vector<ElementAsset> assets;
    std::shared_ptr<AssetStore> store;
};

inline LayerKind element_kind_from_string(const std::string& s) {
    if (s == "ornament-a") return LayerKind::OrnamentTrim;
    if (s == "ornament-b") return LayerKind::OrnamentFree;
    if (s == "mc-c") return LayerKind::MaskMain;
    if (s == "mc-d") return LayerKind::MaskSub;
    if (s == "mc-e") return LayerKind::MaskAction;
    return LayerKind::Unknown;
}

inline const char* element_kind_to_string(LayerKind k) {
    switch (k) {
        case LayerKind::OrnamentTrim: return "ornament-a";
        case LayerKind::OrnamentFree: return "ornament-b";
        case LayerKind::MaskMain: return "mc-c";
        case LayerKind::MaskSub: return "mc-d";
        case LayerKind::MaskAction: return "mc-e";
        default: return "unknown";
    }
}

inline ElementLibrary load_element_library(const std::filesystem::path& root) {
    const auto manifest_path = root / "manifest.json";
    std::ifstream f(manifest_path);
    if (!f) throw ParseError("missing element manifest: " + manifest_path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw ParseError(manifest_path.string() + ": unsupported schema_version");
    ElementLibrary lib;
    lib.store = std::make_shared<AssetStore>(root);
    std::vector<std::string> problems;
    for (const auto& ej : j.at("elements")) {
        ElementAsset a;
        a.id = ej.at("id").get<std::string>();
        a.kind = element_kind_from_string(ej.at("kind").get<std::string>());
        a.style_tags = ej.value("style_tags", std::vector<std::string>{});
        a.palette_color = ej.value("color", std::string());
        a.path = ej.at("path").get<std::string>();
        if (a.kind == LayerKind::Unknown)
            problems.push_back(a.id + ": unknown element kind");
        if (!lib.store->exists(a.path))
            problems.push_back(a.id + ": raster not found: " + a.path);
        lib.assets.push_back(std::move(a));
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    std::sort(lib.assets.begin(), lib.assets.end(),
              [](const ElementAsset& a, const ElementAsset& b) { return a.id < b.id; });
    return lib;
}

namespace detail {

inline double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::size_t inter = 0;
    for (const auto& x : sa) inter += sb.count(x);
    const std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 1.0 : double(inter) / double(uni);
}

}  // namespace detail

/// Replace ornament/mask rasters with the best-matching library element:
/// tag Jaccard similarity times palette closeness to the banner's primary
/// color. Geometry never changes; layers keep their original asset when the
/// library has nothing of that kind.
inline std::vector<std::pair<std::string, std::string>> retrieve_elements(
    CandidateBanner& banner, const ElementLibrary& elements,
    const std::vector<std::string>& style_tags, const Palette& palette) {
    std::vector<std::pair<std::string, std::string>> substitutions;
    for (PlacedLayer& l : banner.layers) {
        if (!(is_mask(l.kind) || is_ornament(l.kind))) continue;
        const ElementAsset* best = nullptr;
        double best_score = -1;
        for (const ElementAsset& a : elements.assets) {
            if (a.kind != l.kind) continue;
            double color_factor = 0.5;
            if (!a.palette_color.empty() && !banner.primary_color.empty())
                color_factor = 1.0 - palette.distance(a.palette_color, banner.primary_color) /
                                         palette.max_distance();
            const double score = detail::jaccard(style_tags, a.style_tags) * color_factor;
            if (score > best_score) {  // ties keep the first, ids are sorted
                best_score = score;
                best = &a;
            }
        }
        if (best != nullptr) {
            l.asset_ref = std::string(kElementRefPrefix) + best->path;
            if (!best->palette_color.empty()) l.color = best->palette_color;
            substitutions.emplace_back(l.name, best->id);
        }
    }
    banner.substitutions = substitutions;
    return substitutions;
}

/// Weights over the six evaluation terms; must sum to 1.
struct EvalWeights {
    double occlusion = 0.30;
    double containment = 0.20;
    double margin = 0.15;
    double alignment = 0.15;
    double harmony = 0.10;
    double simplicity = 0.10;

    double sum() const {
        return occlusion + containment + margin + alignment + harmony + simplicity;
    }
};

struct EvalBreakdown {
    double occlusion = 1, containment = 1, margin = 1, alignment = 1, harmony = 1,
           simplicity = 1;
    double total = 1;
};

namespace detail {

/// Proxy render of the non-text stack, downsampled for speed, used by the
/// simplicity term. Deterministic.
inline double simplicity_term(const CandidateBanner& banner, const RenderContext& ctx) {
    std::vector<const PlacedLayer*> texts;
    for (const PlacedLayer& l : banner.layers)
        if (is_text(l.kind)) texts.push_back(&l);
    if (texts.empty() || ctx.assets == nullptr) return 1.0;

    constexpr int kProxy = 96;
    const double sx = double(kProxy) / banner.width;
    const double sy = double(kProxy) / banner.height;
    Canvas canvas(kProxy, kProxy);
    RenderStats stats;
    for (const PlacedLayer& l : banner.layers) {
        if (is_text(l.kind)) continue;
        PlacedLayer scaled = l;
        scaled.bbox = Rect{l.bbox.x * sx, l.bbox.y * sy, l.bbox.w * sx, l.bbox.h * sy};
        draw_layer(canvas, scaled, ctx, stats);
    }
    const Image img = canvas.to_image();

    double var_sum = 0;
    int boxes = 0;
    for (const PlacedLayer* t : texts) {
        const int x0 = std::clamp(int(t->bbox.x * sx), 0, kProxy - 1);
        const int y0 = std::clamp(int(t->bbox.y * sy), 0, kProxy - 1);
        const int x1 = std::clamp(int(t->bbox.right() * sx) + 1, x0 + 1, kProxy);
        const int y1 = std::clamp(int(t->bbox.bottom() * sy) + 1, y0 + 1, kProxy);
        double mean[3] = {0, 0, 0};
        double m2[3] = {0, 0, 0};
        int n = 0;
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                const std::uint8_t* p = img.pixel(x, y);
                ++n;
                for (int c = 0; c < 3; ++c) {
                    const double d = p[c] - mean[c];
                    mean[c] += d / n;
                    m2[c] += d * (p[c] - mean[c]);
                }
            }
        if (n < 2) continue;
        const double var = (m2[0] + m2[1] + m2[2]) / (3.0 * n);
        var_sum += std::min(1.0, var / 16256.25);  // (255/2)^2 normalizer
        ++boxes;
    }
    return boxes > 0 ? 1.0 - var_sum / boxes : 1.0;
}

}  // namespace detail

/// Aesthetic evaluation in [0, 1]: weighted sum of occlusion, containment,
/// margin, alignment, color harmony and background simplicity terms.
inline EvalBreakdown evaluate_banner(const CandidateBanner& banner, const RenderContext& ctx,
                                     const EvalWeights& weights = {}) {
    EvalBreakdown out;
    const Rect canvas = banner.canvas();

    std::vector<const PlacedLayer*> texts, products, visible;
    for (const PlacedLayer& l : banner.layers) {
        if (is_text(l.kind)) texts.push_back(&l);
        if (l.kind == LayerKind::Product) products.push_back(&l);
        if (l.kind != LayerKind::Background) visible.push_back(&l);
    }

    // occlusion: worst text/product overlap
    double worst_iou = 0;
    for (const PlacedLayer* t : texts)
        for (const PlacedLayer* p : products) worst_iou = std::max(worst_iou, iou(t->bbox, p->bbox));
    out.occlusion = 1.0 - worst_iou;

    // containment: layer area inside the canvas
    double total_area = 0, inside_area = 0;
    for (const PlacedLayer& l : banner.layers) {
        total_area += l.bbox.area();
        inside_area += intersect(l.bbox, canvas).area();
    }
    out.containment = total_area > 0 ? inside_area / total_area : 1.0;

    // margin: text/products respect a 2% safety inset, scaled linearly
    const double inset_x = 0.02 * banner.width;
    const double inset_y = 0.02 * banner.height;
    double worst_violation = 0;
    for (const PlacedLayer* l : texts) {
        const double vx = std::max({inset_x - (l->bbox.x - canvas.x),
                                    inset_x - (canvas.right() - l->bbox.right()), 0.0});
        const double vy = std::max({inset_y - (l->bbox.y - canvas.y),
                                    inset_y - (canvas.bottom() - l->bbox.bottom()), 0.0});
        worst_violation = std::max({worst_violation, std::min(vx / inset_x, 1.0),
                                    std::min(vy / inset_y, 1.0)});
    }
    for (const PlacedLayer* l : products) {
        const double vx = std::max({inset_x - (l->bbox.x - canvas.x),
                                    inset_x - (canvas.right() - l->bbox.right()), 0.0});
        const double vy = std::max({inset_y - (l->bbox.y - canvas.y),
                                    inset_y - (canvas.bottom() - l->bbox.bottom()), 0.0});
        worst_violation = std::max({worst_violation, std::min(vx / inset_x, 1.0),
                                    std::min(vy / inset_y, 1.0)});
    }
    out.margin = 1.0 - worst_violation;

    // alignment: share of layer pairs with an edge or center aligned within 4 px
    std::size_t aligned = 0, pairs = 0;
    for (std::size_t i = 0; i < visible.size(); ++i) {
        for (std::size_t j = i + 1; j < visible.size(); ++j) {
            ++pairs;
            const Rect& a = visible[i]->bbox;
            const Rect& b = visible[j]->bbox;
            const double tol = 4.0;
            const bool hit = std::fabs(a.x - b.x) <= tol || std::fabs(a.right() - b.right()) <= tol ||
                             std::fabs(a.cx() - b.cx()) <= tol || std::fabs(a.y - b.y) <= tol ||
                             std::fabs(a.bottom() - b.bottom()) <= tol ||
                             std::fabs(a.cy() - b.cy()) <= tol;
            if (hit) ++aligned;
        }
    }
    out.alignment = pairs > 0 ? double(aligned) / double(pairs) : 1.0;

    // harmony: element colors against the primary color
    if (!banner.primary_color.empty() && ctx.palette != nullptr) {
        double acc = 0;
        int n = 0;
        for (const PlacedLayer& l : banner.layers) {
            if (l.color.empty() || !ctx.palette->has(l.color)) continue;
            acc += 1.0 - ctx.palette->distance(l.color, banner.primary_color) /
                             ctx.palette->max_distance();
            ++n;
        }
        out.harmony = n > 0 ? acc / n : 1.0;
    }

    out.simplicity = detail::simplicity_term(banner, ctx);

    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    out.occlusion = clamp01(out.occlusion);
    out.containment = clamp01(out.containment);
    out.margin = clamp01(out.margin);
    out.alignment = clamp01(out.alignment);
    out.harmony = clamp01(out.harmony);
    out.simplicity = clamp01(out.simplicity);
    out.total = weights.occlusion * out.occlusion + weights.containment * out.containment +
                weights.margin * out.margin + weights.alignment * out.alignment +
                weights.harmony * out.harmony + weights.simplicity * out.simplicity;
    out.total = clamp01(out.total);
    return out;
}

struct FinetuneConfig {
    int budget = 200;             // max proposals
    int stall_limit = 30;         // consecutive rejections before stopping
    double move_step = 24.0;      // max |dx|, |dy| per move proposal
    double scale_min = 0.8;
    double scale_max = 1.25;
    double opacity_step = 0.25;
};

struct FinetuneResult {
    double initial_score = 0;
    double final_score = 0;
    int proposals = 0;
    int accepted = 0;
};

namespace detail {

inline bool move_scale_immune(LayerKind k) {
    return k == LayerKind::Background || k == LayerKind::Logo;
}

}  // namespace detail

/// First-improvement hill climbing over the bounded action set. Proposals
/// are clipped into the canvas; an action is kept only when the evaluation
/// strictly increases. Deterministic for a fixed seed.
inline FinetuneResult finetune(CandidateBanner& banner, const RenderContext& ctx,
                               const EvalWeights& weights, std::uint64_t seed,
                               const FinetuneConfig& cfg = {}) {
    Rng rng(seed);
    FinetuneResult result;
    double current = evaluate_banner(banner, ctx, weights).total;
    result.initial_score = current;
    banner.action_trace.clear();

    const Rect canvas = banner.canvas();
    int stall = 0;
    for (int iter = 0; iter < cfg.budget && stall < cfg.stall_limit; ++iter) {
        ++result.proposals;

        // weighted action choice: movement dominates the useful moves
        const int roll = int(rng.next_int(0, 9));
        enum class Kind { Move, Scale, Reorder, Recolor, Opacity };
        const Kind kind = roll < 5   ? Kind::Move
                          : roll < 7 ? Kind::Scale
                          : roll < 8 ? Kind::Reorder
                          : roll < 9 ? Kind::Recolor
                                     : Kind::Opacity;

        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < banner.layers.size(); ++i) {
            const PlacedLayer& l = banner.layers[i];
            switch (kind) {
                case Kind::Move:
                case Kind::Scale:
                    if (!detail::move_scale_immune(l.kind)) eligible.push_back(i);
                    break;
                case Kind::Reorder:
                    if (l.kind != LayerKind::Background) eligible.push_back(i);
                    break;
                case Kind::Recolor:
                    if (!l.color.empty()) eligible.push_back(i);
                    break;
                case Kind::Opacity:
                    if (is_mask(l.kind) || is_ornament(l.kind)) eligible.push_back(i);
                    break;
            }
        }
        if (eligible.empty()) {
            ++stall;
            continue;
        }
        const std::size_t li = eligible[std::size_t(rng.next_int(0, std::int64_t(eligible.size()) - 1))];

        CandidateBanner trial = banner;
        PlacedLayer& l = trial.layers[li];
        std::ostringstream desc;
        switch (kind) {
            case Kind::Move: {
                const double dx = rng.next_double(-cfg.move_step, cfg.move_step);
                const double dy = rng.next_double(-cfg.move_step, cfg.move_step);
                Rect moved = l.bbox;
                moved.x += dx;
                moved.y += dy;
                l.bbox = clamp_into(moved, canvas);
                desc << "move " << l.name << " dx=" << std::lround(dx) << " dy="
                     << std::lround(dy);
                break;
            }
            case Kind::Scale: {
                const double f = rng.next_double(cfg.scale_min, cfg.scale_max);
                const double cx = l.bbox.cx(), cy = l.bbox.cy();
                Rect scaled{cx - l.bbox.w * f / 2, cy - l.bbox.h * f / 2, l.bbox.w * f,
                            l.bbox.h * f};
                l.bbox = clamp_into(scaled, canvas);
                desc << "scale " << l.name << " f=" << f;
                break;
            }
            case Kind::Reorder: {
                const int new_z = int(rng.next_int(1, std::int64_t(trial.layers.size()) - 1));
                desc << "reorder " << l.name << " z=" << new_z;
                PlacedLayer moved = trial.layers[li];
                trial.layers.erase(trial.layers.begin() + std::ptrdiff_t(li));
                trial.layers.insert(trial.layers.begin() + new_z, moved);
                for (std::size_t i = 0; i < trial.layers.size(); ++i) trial.layers[i].z = int(i);
                break;
            }
            case Kind::Recolor: {
                const auto& entries = ctx.palette->entries();
                const std::size_t ci =
                    std::size_t(rng.next_int(0, std::int64_t(entries.size()) - 1));
                l.color = entries[ci].name;
                desc << "recolor " << l.name << " to " << l.color;
                break;
            }
            case Kind::Opacity: {
                const double delta = rng.next_double(-cfg.opacity_step, cfg.opacity_step);
                l.opacity = std::clamp(l.opacity + delta, 0.0, 1.0);
                desc << "opacity " << l.name << " to " << l.opacity;
                break;
            }
        }

        const double trial_score = evaluate_banner(trial, ctx, weights).total;
        if (trial_score > current) {
            trial.action_trace = banner.action_trace;
            trial.action_trace.push_back({desc.str(), trial_score});
            banner = std::move(trial);
            current = trial_score;
            ++result.accepted;
            stall = 0;
        } else {
            ++stall;
        }
    }
    result.final_score = current;
    banner.scores.adjuster_energy = current;
    return result;
}

}  // namespace bannergen
