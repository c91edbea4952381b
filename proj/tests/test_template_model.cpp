#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "bannergen/template_model.hpp"
#include "test_support.hpp"

using namespace bannergen;
namespace fs = std::filesystem;

namespace {

const Palette kPalette = Palette::default_palette();

bool has_violation(const std::vector<Violation>& vs, const std::string& code,
                   const std::string& layer = "") {
    for (const auto& v : vs)
        if (v.code == code && (layer.empty() || v.layer == layer)) return true;
    return false;
}

/// Write a loadable library of templates (plus trivial assets) to dir.
void write_library(const fs::path& dir, const std::vector<Template>& templates) {
    fs::create_directories(dir / "templates");
    fs::create_directories(dir / "assets");
    Image px(4, 4);
    px.fill(Rgb{200, 50, 50}, 255);
    png_save(px, dir / "assets" / "a.png");

    nlohmann::json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["name"] = "test library";
    manifest["palette"] = palette_to_json(kPalette);
    manifest["templates"] = nlohmann::json::array();
    for (const Template& t : templates) {
        manifest["templates"].push_back(t.id);
        std::ofstream f(dir / "templates" / (t.id + ".json"));
        f << template_to_json(t).dump(2);
    }
    std::ofstream f(dir / "manifest.json");
    f << manifest.dump(2);
}

}  // namespace

TEST(LayerTaxonomy, NamesMapToKinds) {
    EXPECT_EQ(classify_layer_name("background").first, LayerKind::Background);
    EXPECT_EQ(classify_layer_name("logo").first, LayerKind::Logo);
    EXPECT_EQ(classify_layer_name("text-main").first, LayerKind::TextMain);
    EXPECT_EQ(classify_layer_name("text-sub").first, LayerKind::TextSub);
    EXPECT_EQ(classify_layer_name("text-action").first, LayerKind::TextAction);
    EXPECT_EQ(classify_layer_name("mc-c").first, LayerKind::MaskMain);
    EXPECT_EQ(classify_layer_name("mc-d").first, LayerKind::MaskSub);
    EXPECT_EQ(classify_layer_name("mc-e").first, LayerKind::MaskAction);
    auto [kind, idx] = classify_layer_name("product-3");
    EXPECT_EQ(kind, LayerKind::Product);
    EXPECT_EQ(idx, 3);
    EXPECT_EQ(classify_layer_name("ornament-a-1").first, LayerKind::OrnamentTrim);
    EXPECT_EQ(classify_layer_name("ornament-b-2").first, LayerKind::OrnamentFree);
    EXPECT_EQ(classify_layer_name("sticker-1").first, LayerKind::Unknown);
    EXPECT_EQ(classify_layer_name("product-0").first, LayerKind::Unknown);
    EXPECT_EQ(classify_layer_name("product-").first, LayerKind::Unknown);
}

TEST(Lint, ValidTemplateHasNoViolations) {
    const Template t = bgtest::make_template({});
    EXPECT_TRUE(lint_template(t, kPalette).empty());
}

TEST(Lint, UnknownLayerKind) {
    Template t = bgtest::make_template({});
    Layer sticker;
    sticker.name = "sticker-1";
    sticker.bbox = Rect{10, 10, 50, 50};
    sticker.z = int(t.layers.size());
    t.layers.push_back(sticker);
    t.recompute_derived();
    const auto vs = lint_template(t, kPalette);
    EXPECT_TRUE(has_violation(vs, "UnknownLayerKind", "sticker-1"));
}

TEST(Lint, CapacityOutOfRange) {
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "text-main") l.capacity = 25;
    const auto vs = lint_template(t, kPalette);
    ASSERT_TRUE(has_violation(vs, "CapacityOutOfRange", "text-main"));
    for (const auto& v : vs) {
        if (v.code == "CapacityOutOfRange") EXPECT_EQ(v.detail, "25");
    }
}

TEST(Lint, BboxOutsideCanvas) {
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "ornament-a-1") l.bbox = Rect{790, 790, 40, 40};
    EXPECT_TRUE(has_violation(lint_template(t, kPalette), "BboxOutsideCanvas", "ornament-a-1"));
}

TEST(Lint, MaskWithoutBinding) {
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "mc-c") l.bound_to.clear();
    EXPECT_TRUE(has_violation(lint_template(t, kPalette), "MaskUnbound", "mc-c"));
}

TEST(Lint, DanglingBoundTo) {
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "mc-c") l.bound_to = "text-ghost";
    EXPECT_TRUE(has_violation(lint_template(t, kPalette), "DanglingBoundTo", "mc-c"));
}

TEST(Lint, MaskBoundToWrongRole) {
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "mc-c") l.bound_to = "text-sub";
    EXPECT_TRUE(has_violation(lint_template(t, kPalette), "MaskBindingWrongKind", "mc-c"));
}

TEST(Lint, MissingTags) {
    Template t = bgtest::make_template({});
    t.style_tags.clear();
    t.category_tags.clear();
    const auto vs = lint_template(t, kPalette);
    int tag_violations = 0;
    for (const auto& v : vs)
        if (v.code == "MissingRequiredTags") ++tag_violations;
    EXPECT_EQ(tag_violations, 2);
}

TEST(Lint, TextLineCountBounds) {
    Template t = bgtest::make_template({});
    std::erase_if(t.layers, [](const Layer& l) { return is_text(l.kind) || is_mask(l.kind); });
    for (std::size_t i = 0; i < t.layers.size(); ++i) t.layers[i].z = int(i);
    t.recompute_derived();
    EXPECT_TRUE(has_violation(lint_template(t, kPalette), "TextLineCountOutOfRange"));
}

TEST(Lint, ReportsAllViolationsNotJustFirst) {
    Template t = bgtest::make_template({});
    t.style_tags.clear();
    for (Layer& l : t.layers) {
        if (l.name == "mc-c") l.bound_to.clear();
        if (l.name == "text-main") l.capacity = 2;
    }
    const auto vs = lint_template(t, kPalette);
    EXPECT_GE(vs.size(), 3u);
}

TEST(Lint, ZOrderMustBePermutation) {
    Template t = bgtest::make_template({});
    t.layers[0].z = 17;
    EXPECT_TRUE(has_violation(lint_template(t, kPalette), "BadZOrder"));
}

TEST(DerivedFields, MatchRecomputation) {
    Template t = bgtest::make_template({.text_lines = 3, .product_slots = 2});
    EXPECT_EQ(t.text_line_count, 3);
    EXPECT_EQ(t.product_slot_count, 2);
    EXPECT_DOUBLE_EQ(t.avg_word_capacity, 8.0);
    const int lines = t.text_line_count;
    const double cap = t.avg_word_capacity;
    const int slots = t.product_slot_count;
    t.recompute_derived();
    EXPECT_EQ(t.text_line_count, lines);
    EXPECT_DOUBLE_EQ(t.avg_word_capacity, cap);
    EXPECT_EQ(t.product_slot_count, slots);
}

TEST(LoadLibrary, LoadsValidLibraryWithDerivedFields) {
    const auto dir = bgtest::temp_dir("lib-ok");
    std::vector<Template> tpls;
    for (int i = 0; i < 6; ++i) {
        bgtest::TemplateSpec spec;
        spec.id = "tpl-" + std::to_string(i);
        spec.text_lines = 1 + i % 3;
        spec.product_slots = 1 + i % 2;
        tpls.push_back(bgtest::make_template(spec));
    }
    write_library(dir, tpls);
    const TemplateLibrary lib = load_library(dir);
    EXPECT_EQ(lib.templates.size(), 6u);
    for (const Template& t : lib.templates) {
        EXPECT_GE(t.text_line_count, 1);
        EXPECT_GT(t.avg_word_capacity, 0.0);
    }
    fs::remove_all(dir);
}

TEST(LoadLibrary, LoadTwiceIsByteIdentical) {
    const auto dir = bgtest::temp_dir("lib-twice");
    write_library(dir, {bgtest::make_template({})});
    const std::string a = serialize_library(load_library(dir));
    const std::string b = serialize_library(load_library(dir));
    EXPECT_EQ(a, b);
    fs::remove_all(dir);
}

TEST(LoadLibrary, MaskWithoutBoundToNamesTemplateAndLayer) {
    const auto dir = bgtest::temp_dir("lib-badmask");
    Template bad = bgtest::make_template({.id = "tpl-bad"});
    for (Layer& l : bad.layers)
        if (l.name == "mc-c") l.bound_to.clear();
    write_library(dir, {bad});
    try {
        load_library(dir);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("tpl-bad"), std::string::npos);
        EXPECT_NE(msg.find("mc-c"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(LoadLibrary, DuplicateIdReported) {
    const auto dir = bgtest::temp_dir("lib-dup");
    write_library(dir, {bgtest::make_template({})});
    // manifest listing the same id twice
    std::ifstream in(dir / "manifest.json");
    nlohmann::json manifest = nlohmann::json::parse(in);
    in.close();
    manifest["templates"].push_back("tpl-1");
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2);
    out.close();
    try {
        load_library(dir);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate id"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(LoadLibrary, MissingAssetReported) {
    const auto dir = bgtest::temp_dir("lib-noasset");
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "ornament-a-1") l.asset_ref = "assets/missing.png";
    write_library(dir, {t});
    EXPECT_THROW(load_library(dir), ValidationError);
    fs::remove_all(dir);
}

TEST(LoadLibrary, ParseErrorCarriesFile) {
    const auto dir = bgtest::temp_dir("lib-parse");
    write_library(dir, {bgtest::make_template({})});
    std::ofstream f(dir / "templates" / "tpl-1.json");
    f << "{ not json";
    f.close();
    try {
        load_library(dir);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("tpl-1.json"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(ExpandByColor, GeometryUntouchedColorsRotated) {
    const Template t = bgtest::make_template({.bg_color = "red"});
    const Template out = expand_by_color(t, 120.0, kPalette);
    EXPECT_NE(out.id, t.id);
    EXPECT_EQ(out.series_id, t.series_id);
    ASSERT_EQ(out.layers.size(), t.layers.size());
    for (std::size_t i = 0; i < t.layers.size(); ++i) {
        EXPECT_EQ(out.layers[i].bbox, t.layers[i].bbox);
        EXPECT_EQ(out.layers[i].z, t.layers[i].z);
        EXPECT_EQ(out.layers[i].kind, t.layers[i].kind);
        EXPECT_EQ(out.layers[i].capacity, t.layers[i].capacity);
    }
    // red background anchor rotated 120 degrees is pure green, which snaps
    // to the nearest palette name for (0,255,0)
    const std::string expected = kPalette.classify(hue_rotate(Rgb{255, 0, 0}, 120.0));
    EXPECT_EQ(out.background()->color, expected);
}

TEST(ExpandByColor, RejectsOutOfRangeShift) {
    const Template t = bgtest::make_template({});
    EXPECT_THROW(expand_by_color(t, 0.0, kPalette), std::invalid_argument);
    EXPECT_THROW(expand_by_color(t, 360.0, kPalette), std::invalid_argument);
    EXPECT_NO_THROW(expand_by_color(t, 359.999, kPalette));
}

TEST(ExpandByColor, AssetRefsGainHueSuffix) {
    Template t = bgtest::make_template({});
    for (Layer& l : t.layers)
        if (l.name == "ornament-a-1") l.asset_ref = "assets/a.png";
    const Template once = expand_by_color(t, 120.0, kPalette);
    const Template twice = expand_by_color(once, 120.0, kPalette);
    for (const Layer& l : twice.layers) {
        if (l.name == "ornament-a-1") EXPECT_EQ(l.asset_ref, "assets/a.png#hue240");
    }
}

TEST(AssetStore, HueRotatedVariantResolvesLazily) {
    const auto dir = bgtest::temp_dir("assets");
    fs::create_directories(dir / "assets");
    Image img(4, 4);
    img.fill(Rgb{255, 0, 0}, 255);
    png_save(img, dir / "assets" / "a.png");
    AssetStore store(dir);
    EXPECT_TRUE(store.exists("assets/a.png#hue120"));
    const auto rotated = store.get("assets/a.png#hue120");
    EXPECT_EQ(rotated->rgb(1, 1), (Rgb{0, 255, 0}));
    fs::remove_all(dir);
}
