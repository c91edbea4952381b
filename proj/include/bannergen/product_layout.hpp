#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/geometry.hpp"

namespace bannergen {

/// Layout names from the multi-product rule tables. Which one applies is a
/// function of the product count and the aspect-ratio profile.
enum class ProductLayout {
    Single,
    // two products
    Diagonal,
    Inclined,
    SideBySide,
    // three products
    ThreeWidth,
    OneHeightTwoWidth,
    ThreeSlender,
    ThreeHeight,
    Triangular,
    // more than three
    NearVisionRotation,
    TwoLayerTriangle,
    FanRotation,
    OneLayerTriangle,
};

inline const char* product_layout_name(ProductLayout p) {
    switch (p) {
        case ProductLayout::Single: return "single";
        case ProductLayout::Diagonal: return "diagonal";
        case ProductLayout::Inclined: return "inclined";
        case ProductLayout::SideBySide: return "side-by-side";
        case ProductLayout::ThreeWidth: return "three-width";
        case ProductLayout::OneHeightTwoWidth: return "one-height-two-width";
        case ProductLayout::ThreeSlender: return "three-slender";
        case ProductLayout::ThreeHeight: return "three-height";
        case ProductLayout::Triangular: return "triangular";
        case ProductLayout::NearVisionRotation: return "near-vision-rotation";
        case ProductLayout::TwoLayerTriangle: return "two-layer-triangle";
        case ProductLayout::FanRotation: return "fan-rotation";
        case ProductLayout::OneLayerTriangle: return "one-layer-triangle";
    }
    return "unknown";
}

/// Decision table over (count, aspect profile). Total: every input maps to
/// exactly one layout.
inline ProductLayout choose_product_layout(const std::vector<double>& aspects) {
    const std::size_t n = aspects.size();
    if (n == 0) throw std::invalid_argument("no products");
    if (n == 1) return ProductLayout::Single;
    if (n == 2) {
        const double mean = (aspects[0] + aspects[1]) / 2.0;
        if (mean <= 0.75) return ProductLayout::SideBySide;
        if (mean <= 1.33) return ProductLayout::Diagonal;
        return ProductLayout::Inclined;
    }
    if (n == 3) {
        const bool all_slender = std::all_of(aspects.begin(), aspects.end(),
                                             [](double a) { return a <= 0.6; });
        if (all_slender) return ProductLayout::ThreeSlender;
        const bool all_tall = std::all_of(aspects.begin(), aspects.end(),
                                          [](double a) { return a > 0.6 && a <= 0.9; });
        if (all_tall) return ProductLayout::ThreeHeight;
        const bool all_wide = std::all_of(aspects.begin(), aspects.end(),
                                          [](double a) { return a > 1.3; });
        if (all_wide) return ProductLayout::ThreeWidth;
        int tall_count = 0, wide_count = 0;
        for (double a : aspects) {
            if (a <= 0.9) ++tall_count;
            if (a > 1.3) ++wide_count;
        }
        if (tall_count == 1 && wide_count == 2) return ProductLayout::OneHeightTwoWidth;
        return ProductLayout::Triangular;
    }
    if (n == 4) {
        const double mean = std::accumulate(aspects.begin(), aspects.end(), 0.0) / double(n);
        return mean > 1.0 ? ProductLayout::OneLayerTriangle : ProductLayout::FanRotation;
    }
    if (n == 5) return ProductLayout::TwoLayerTriangle;
    return ProductLayout::NearVisionRotation;
}

struct ProductSlot {
    Rect bbox;
    double rotation_deg = 0;
};

namespace detail {

inline Rect sub_rect(const Rect& u, double fx, double fy, double fw, double fh) {
    return Rect{u.x + fx * u.w, u.y + fy * u.h, fw * u.w, fh * u.h};
}

}  // namespace detail

/// Slot geometry per layout, as fractions of the product area. Slots stay
/// inside the area and pairwise IoU stays at or below 5%.
inline std::vector<ProductSlot> product_slots(ProductLayout layout, std::size_t n,
                                              const Rect& area) {
    using detail::sub_rect;
    std::vector<ProductSlot> slots;
    switch (layout) {
        case ProductLayout::Single:
            slots.push_back({sub_rect(area, 0.1, 0.1, 0.8, 0.8), 0});
            break;
        case ProductLayout::SideBySide:
            slots.push_back({sub_rect(area, 0.02, 0.1, 0.46, 0.8), 0});
            slots.push_back({sub_rect(area, 0.52, 0.1, 0.46, 0.8), 0});
            break;
        case ProductLayout::Diagonal:
            slots.push_back({sub_rect(area, 0.02, 0.02, 0.47, 0.47), 0});
            slots.push_back({sub_rect(area, 0.51, 0.51, 0.47, 0.47), 0});
            break;
        case ProductLayout::Inclined:
            slots.push_back({sub_rect(area, 0.02, 0.02, 0.46, 0.78), -8});
            slots.push_back({sub_rect(area, 0.52, 0.20, 0.46, 0.78), 8});
            break;
        case ProductLayout::ThreeWidth:
            slots.push_back({sub_rect(area, 0.05, 0.01, 0.90, 0.30), 0});
            slots.push_back({sub_rect(area, 0.05, 0.345, 0.90, 0.30), 0});
            slots.push_back({sub_rect(area, 0.05, 0.68, 0.90, 0.30), 0});
            break;
        case ProductLayout::ThreeSlender:
            slots.push_back({sub_rect(area, 0.01, 0.03, 0.31, 0.94), 0});
            slots.push_back({sub_rect(area, 0.345, 0.03, 0.31, 0.94), 0});
            slots.push_back({sub_rect(area, 0.68, 0.03, 0.31, 0.94), 0});
            break;
        case ProductLayout::ThreeHeight:
            slots.push_back({sub_rect(area, 0.01, 0.10, 0.30, 0.88), 0});
            slots.push_back({sub_rect(area, 0.35, 0.02, 0.30, 0.96), 0});
            slots.push_back({sub_rect(area, 0.69, 0.10, 0.30, 0.88), 0});
            break;
        case ProductLayout::OneHeightTwoWidth:
            slots.push_back({sub_rect(area, 0.02, 0.05, 0.42, 0.90), 0});
            slots.push_back({sub_rect(area, 0.48, 0.05, 0.50, 0.42), 0});
            slots.push_back({sub_rect(area, 0.48, 0.53, 0.50, 0.42), 0});
            break;
        case ProductLayout::Triangular:
            slots.push_back({sub_rect(area, 0.28, 0.02, 0.44, 0.44), 0});
            slots.push_back({sub_rect(area, 0.02, 0.52, 0.44, 0.44), 0});
            slots.push_back({sub_rect(area, 0.54, 0.52, 0.44, 0.44), 0});
            break;
        case ProductLayout::OneLayerTriangle: {
            // one row, taller toward the middle
            const double hs[4] = {0.55, 0.85, 0.85, 0.55};
            for (int i = 0; i < 4; ++i) {
                const double h = hs[i];
                slots.push_back({sub_rect(area, 0.015 + i * 0.2475, 0.97 - h, 0.225, h),
                                 0});
            }
            break;
        }
        case ProductLayout::FanRotation: {
            // fanned arc, 30-degree rotation step
            const double ys[4] = {0.40, 0.06, 0.06, 0.40};
            for (int i = 0; i < 4; ++i) {
                slots.push_back({sub_rect(area, 0.015 + i * 0.2475, ys[i], 0.225, 0.55),
                                 -45.0 + 30.0 * i});
            }
            break;
        }
        case ProductLayout::TwoLayerTriangle:
            slots.push_back({sub_rect(area, 0.18, 0.02, 0.30, 0.44), 0});
            slots.push_back({sub_rect(area, 0.52, 0.02, 0.30, 0.44), 0});
            slots.push_back({sub_rect(area, 0.01, 0.52, 0.31, 0.46), 0});
            slots.push_back({sub_rect(area, 0.345, 0.52, 0.31, 0.46), 0});
            slots.push_back({sub_rect(area, 0.68, 0.52, 0.31, 0.46), 0});
            break;
        case ProductLayout::NearVisionRotation: {
            // near items large, sizes taper along the row, alternating tilt
            std::vector<double> weights;
            for (std::size_t i = 0; i < n; ++i)
                weights.push_back(1.0 - 0.5 * double(i) / double(n - 1));
            const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
            const double gap = 0.01;
            const double usable = 1.0 - gap * double(n + 1);
            double x = gap;
            for (std::size_t i = 0; i < n; ++i) {
                const double w = usable * weights[i] / total;
                const double h = std::min(1.0, 0.55 + 0.4 * weights[i]);
                slots.push_back({sub_rect(area, x, 0.98 - h, w, h),
                                 (i % 2 == 0 ? -1.0 : 1.0) * 8.0});
                x += w + gap;
            }
            break;
        }
    }
    return slots;
}

/// Full placement: pick the layout by the aspect decision table, generate
/// slots, then assign products to slots by descending area. Returns, per
/// product index, its slot.
struct ProductPlacement {
    ProductLayout layout;
    std::vector<ProductSlot> slots;  // slots[i] belongs to product i
};

inline ProductPlacement layout_products(const std::vector<double>& aspects,
                                        const std::vector<double>& areas, const Rect& area) {
    if (aspects.empty() || aspects.size() != areas.size())
        throw std::invalid_argument("layout_products: bad inputs");
    ProductPlacement out;
    out.layout = choose_product_layout(aspects);
    std::vector<ProductSlot> slots = product_slots(out.layout, aspects.size(), area);

    // big products take big slots
    std::vector<std::size_t> prod_order(aspects.size());
    std::iota(prod_order.begin(), prod_order.end(), 0);
    std::sort(prod_order.begin(), prod_order.end(), [&](std::size_t a, std::size_t b) {
        if (areas[a] != areas[b]) return areas[a] > areas[b];
        return a < b;
    });
    std::vector<std::size_t> slot_order(slots.size());
    std::iota(slot_order.begin(), slot_order.end(), 0);
    std::sort(slot_order.begin(), slot_order.end(), [&](std::size_t a, std::size_t b) {
        const double aa = slots[a].bbox.area(), ab = slots[b].bbox.area();
        if (aa != ab) return aa > ab;
        return a < b;
    });

    out.slots.resize(aspects.size());
    for (std::size_t k = 0; k < aspects.size(); ++k)
        out.slots[prod_order[k]] = slots[slot_order[k]];
    return out;
}

}  // namespace bannergen
