#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bannergen/geometry.hpp"
#include "bannergen/product_layout.hpp"
#include "bannergen/template_model.hpp"
#include "bannergen/typesetting.hpp"

namespace bannergen {

/// One fully resolved layer of a candidate banner: geometry plus whichever
/// content source applies (request product, text string, or raster asset).
struct PlacedLayer {
    std::string name;
    LayerKind kind = LayerKind::Unknown;
    Rect bbox;
    int z = 0;
    std::string color;  // palette name, empty = none
    double opacity = 1.0;
    double rotation_deg = 0;

    int product_index = -1;  // >= 0: draw this request product
    std::string text;        // text layers
    double font_size = 0;
    std::string asset_ref;   // raster-backed layers
    std::string bound_to;
};

struct ScoreBreakdown {
    double recall_text = 0;
    double recall_goods = 0;
    double recall_total = 0;
    double color_score = 0;
    double rank_score = 0;
    bool unranked = false;
    double adjuster_energy = 0;  // final evaluate() value
};

struct AppliedAction {
    std::string description;
    double score_after = 0;
};

/// A template instantiated against one request: concrete placements plus
/// the score trail that produced it.
struct CandidateBanner {
    int width = 0;
    int height = 0;
    std::vector<PlacedLayer> layers;  // sorted by z

    std::string template_id;
    std::string series_id;
    std::string primary_color;
    TypesettingForm form = TypesettingForm::CenteredSingle;
    ProductLayout product_layout = ProductLayout::Single;
    ScoreBreakdown scores;
    std::vector<AppliedAction> action_trace;
    std::vector<std::pair<std::string, std::string>> substitutions;  // layer -> asset id
    std::uint64_t seed = 0;

    Rect canvas() const { return Rect{0, 0, double(width), double(height)}; }

    void sort_layers() {
        std::stable_sort(layers.begin(), layers.end(),
                         [](const PlacedLayer& a, const PlacedLayer& b) { return a.z < b.z; });
    }

    const PlacedLayer* find_layer(const std::string& name) const {
        for (const PlacedLayer& l : layers)
            if (l.name == name) return &l;
        return nullptr;
    }
};

}  // namespace bannergen
