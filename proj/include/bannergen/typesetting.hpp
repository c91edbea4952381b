#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bannergen/geometry.hpp"
#include "bannergen/template_model.hpp"
#include "bannergen/text_util.hpp"

namespace bannergen {

/// The seven canonical text arrangements. Each form is a deterministic bbox
/// generator, so the classifier's choice fully determines geometry.
enum class TypesettingForm {
    CenteredSingle,
    LeftStackedTwo,
    CenteredStackedTwo,
    LeftStackedThree,
    CenteredStackedThree,
    MainWithActionTag,
    Staggered,
};

constexpr int kFormCount = 7;

inline const char* form_name(TypesettingForm f) {
    switch (f) {
        case TypesettingForm::CenteredSingle: return "centered-single";
        case TypesettingForm::LeftStackedTwo: return "left-stacked-two";
        case TypesettingForm::CenteredStackedTwo: return "centered-stacked-two";
        case TypesettingForm::LeftStackedThree: return "left-stacked-three";
        case TypesettingForm::CenteredStackedThree: return "centered-stacked-three";
        case TypesettingForm::MainWithActionTag: return "main-with-action-tag";
        case TypesettingForm::Staggered: return "staggered";
    }
    return "unknown";
}

/// Per-line feature block: char count / 20, five char-class fractions,
/// role one-hot, presence flag. Three line blocks plus two globals.
constexpr int kPerLineFeatures = 10;
constexpr int kTextFeatureDim = 3 * kPerLineFeatures + 2;

/// Features for the text-layout net. W is the canvas width normalized by
/// 1000 px; the trailing global is font size / 100. Absent lines zero-pad
/// with presence flag 0.
inline std::vector<double> text_features(const std::vector<std::string>& texts, double canvas_w,
                                         double font_size) {
    std::vector<double> f(kTextFeatureDim, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t base = i * kPerLineFeatures;
        if (i >= texts.size()) continue;  // presence flag stays 0
        const CharClassHistogram h = char_class_histogram(texts[i]);
        f[base + 0] = double(char_count(texts[i])) / 20.0;
        f[base + 1] = h.upper;
        f[base + 2] = h.lower;
        f[base + 3] = h.digit;
        f[base + 4] = h.cjk;
        f[base + 5] = h.punct;
        f[base + 6 + i] = 1.0;  // role one-hot: main / sub / action
        f[base + 9] = 1.0;      // presence
    }
    f[30] = canvas_w / 1000.0;
    f[31] = font_size / 100.0;
    return f;
}

/// Line bboxes for a form: equal line heights with a 25% rhythm gap filling
/// the area vertically; horizontal anchoring is the form's signature. The
/// action-tag form gives the main line 60% of the height and right-aligns
/// the tag lines. Widths are clamped to [0.2, 1.0] of the area first.
inline std::vector<Rect> form_line_boxes(TypesettingForm form, const std::vector<double>& widths,
                                         const Rect& area) {
    const int n = int(widths.size());
    std::vector<Rect> boxes;
    if (n == 0) return boxes;

    std::vector<double> w(widths);
    for (double& x : w) x = std::clamp(x, 0.2 * area.w, area.w);

    std::vector<double> heights;
    std::vector<double> ys;
    if (form == TypesettingForm::MainWithActionTag && n >= 2) {
        const double main_h = 0.6 * area.h;
        heights.push_back(main_h);
        const double rest = area.h - main_h;
        const int tags = n - 1;
        const double tag_h = rest / (tags + 0.25 * tags);  // same rhythm below
        for (int i = 0; i < tags; ++i) heights.push_back(tag_h);
        double y = area.y;
        for (int i = 0; i < n; ++i) {
            ys.push_back(y);
            y += heights[std::size_t(i)] + 0.25 * tag_h;
        }
    } else {
        const double h = area.h / (n + 0.25 * (n - 1));
        double y = area.y;
        for (int i = 0; i < n; ++i) {
            heights.push_back(h);
            ys.push_back(y);
            y += h * 1.25;
        }
    }

    for (int i = 0; i < n; ++i) {
        const double wi = w[std::size_t(i)];
        double x = area.x;
        switch (form) {
            case TypesettingForm::CenteredSingle:
            case TypesettingForm::CenteredStackedTwo:
            case TypesettingForm::CenteredStackedThree:
                x = area.x + (area.w - wi) / 2.0;
                break;
            case TypesettingForm::LeftStackedTwo:
            case TypesettingForm::LeftStackedThree:
                x = area.x;
                break;
            case TypesettingForm::Staggered:
                x = i % 2 == 0 ? area.x : area.x + area.w - wi;
                break;
            case TypesettingForm::MainWithActionTag:
                x = i == 0 ? area.x : area.x + area.w - wi;
                break;
        }
        boxes.push_back(Rect{x, ys[std::size_t(i)], wi, heights[std::size_t(i)]});
    }
    return boxes;
}

/// Classify a template's existing text geometry into the nearest form; used
/// to label training samples mined from the template library.
inline TypesettingForm label_template_form(const Template& t) {
    std::vector<const Layer*> lines;
    for (const Layer& l : t.layers)
        if (is_text(l.kind)) lines.push_back(&l);
    const Rect area = t.text_area();
    const double tol = std::max(4.0, area.w * 0.04);

    if (lines.size() <= 1) return TypesettingForm::CenteredSingle;

    bool left_aligned = true, centered = true;
    for (const Layer* l : lines) {
        if (std::fabs(l->bbox.x - area.x) > tol) left_aligned = false;
        if (std::fabs(l->bbox.cx() - area.cx()) > tol) centered = false;
    }
    const Layer* action = nullptr;
    for (const Layer* l : lines)
        if (l->kind == LayerKind::TextAction) action = l;
    // a clearly smaller action line pushed toward the right edge reads as a tag
    if (action != nullptr && lines.size() >= 2) {
        const Layer* main = lines.front();
        const bool right_of_center = action->bbox.cx() > area.cx() + tol;
        const bool smaller = action->bbox.h < 0.7 * main->bbox.h;
        if (right_of_center && smaller) return TypesettingForm::MainWithActionTag;
    }
    if (centered)
        return lines.size() == 2 ? TypesettingForm::CenteredStackedTwo
                                 : TypesettingForm::CenteredStackedThree;
    if (left_aligned)
        return lines.size() == 2 ? TypesettingForm::LeftStackedTwo
                                 : TypesettingForm::LeftStackedThree;
    return TypesettingForm::Staggered;
}

}  // namespace bannergen
