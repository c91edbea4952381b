// Regenerates the committed fixtures/ tree: a desk-scale template library,
// an element-asset library, sample product cutouts, batch request files, a
// deliberately broken library for negative lint tests, and a manifest
// pinning counts and CRC-32 checksums. Deterministic: rerunning produces
// byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannergen/adjuster.hpp"
#include "bannergen/image.hpp"
#include "bannergen/png_io.hpp"
#include "bannergen/rng.hpp"
#include "bannergen/template_model.hpp"

using namespace bannergen;
namespace fs = std::filesystem;

namespace {

const Palette kPalette = Palette::default_palette();

// ---------------------------------------------------------------- rasters

Image vertical_gradient(int w, int h, Rgb top, Rgb bottom) {
    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        const double t = h > 1 ? double(y) / (h - 1) : 0;
        const Rgb c{std::uint8_t(top.r + t * (bottom.r - top.r)),
                    std::uint8_t(top.g + t * (bottom.g - top.g)),
                    std::uint8_t(top.b + t * (bottom.b - top.b))};
        for (int x = 0; x < w; ++x) img.set(x, y, c, 255);
    }
    return img;
}

/// Soft-edged ellipse silhouette on a transparent canvas.
Image ellipse_cutout(int w, int h, Rgb fill) {
    Image img(w, h);
    const double cx = w / 2.0, cy = h / 2.0;
    const double rx = w * 0.44, ry = h * 0.46;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double dx = (x + 0.5 - cx) / rx;
            const double dy = (y + 0.5 - cy) / ry;
            const double d = dx * dx + dy * dy;
            if (d <= 1.0) img.set(x, y, fill, d > 0.85 ? 180 : 255);
        }
    return img;
}

/// Rounded-rectangle silhouette (mask shapes, boxy products).
Image rounded_rect_cutout(int w, int h, Rgb fill, double radius_frac = 0.2,
                          std::uint8_t alpha = 255) {
    Image img(w, h);
    const double r = radius_frac * std::min(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            const double qx = std::clamp(px, r, w - r);
            const double qy = std::clamp(py, r, h - r);
            const double dx = px - qx, dy = py - qy;
            if (dx * dx + dy * dy <= r * r) img.set(x, y, fill, alpha);
        }
    return img;
}

/// Corner flourish: quarter rings, used as the trim ornament.
Image corner_flourish(int size, Rgb c) {
    Image img(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double d = std::sqrt(double(x * x + y * y)) / size;
            const bool ring = (d > 0.55 && d < 0.7) || (d > 0.8 && d < 0.92);
            if (ring) img.set(x, y, c, 255);
        }
    return img;
}

/// Star burst used as the free ornament.
Image star_burst(int size, Rgb c) {
    Image img(size, size);
    const double cx = size / 2.0, cy = size / 2.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            const double r = std::sqrt(dx * dx + dy * dy) / (size / 2.0);
            if (r > 1.0) continue;
            const double ang = std::atan2(dy, dx);
            const double spikes = 0.55 + 0.45 * std::cos(8 * ang);
            if (r < spikes) img.set(x, y, c, 255);
        }
    return img;
}

Image logo_block(int w, int h) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool border = x < 2 || y < 2 || x >= w - 2 || y >= h - 2;
            const bool bar = y > h / 3 && y < 2 * h / 3 && x > w / 5 && x < 4 * w / 5;
            if (border || bar) img.set(x, y, Rgb{30, 30, 30}, 255);
        }
    return img;
}

// ------------------------------------------------------------- templates

struct LayerDef {
    std::string name;
    Rect bbox;
    std::string color;
    double opacity = 1.0;
    double font_size = 0;
    int capacity = 0;
    std::string asset_ref;
    std::string bound_to;
};

struct TemplateDef {
    std::string id;
    std::string series;
    int w = 800, h = 800;
    std::vector<std::string> styles{"promo"};
    std::vector<std::string> categories{"general"};
    std::vector<int> departments;
    std::vector<LayerDef> layers;
};

nlohmann::json template_def_to_json(const TemplateDef& d) {
    Template t;
    t.id = d.id;
    t.series_id = d.series;
    t.width = d.w;
    t.height = d.h;
    t.style_tags = d.styles;
    t.category_tags = d.categories;
    t.department_ids = d.departments;
    int z = 0;
    for (const LayerDef& ld : d.layers) {
        Layer l;
        l.name = ld.name;
        l.bbox = ld.bbox;
        l.z = z++;
        l.color = ld.color;
        l.opacity = ld.opacity;
        l.font_size = ld.font_size;
        l.capacity = ld.capacity;
        l.asset_ref = ld.asset_ref;
        l.bound_to = ld.bound_to;
        t.layers.push_back(l);
    }
    t.recompute_derived();
    return template_to_json(t);
}

/// Parametric template builder: lays out a text block, a product band with
/// `slots` slots, masks per text line, trim + free ornaments, and a logo.
TemplateDef build_template(const std::string& id, const std::string& series, int w, int h,
                           int lines, int slots, const std::string& bg_color,
                           const std::string& bg_asset, const std::string& text_color,
                           const std::vector<int>& caps, bool centered_text,
                           const std::vector<std::string>& styles,
                           const std::vector<std::string>& categories,
                           const std::vector<int>& departments) {
    TemplateDef d;
    d.id = id;
    d.series = series;
    d.w = w;
    d.h = h;
    d.styles = styles;
    d.categories = categories;
    d.departments = departments;

    d.layers.push_back({"background", Rect{0, 0, double(w), double(h)}, bg_color, 1.0, 0, 0,
                        bg_asset, ""});

    // text block in the upper 40%
    const double text_top = 0.06 * h;
    const double line_h = 0.30 * h / 3.0;
    const char* roles[] = {"text-main", "text-sub", "text-action"};
    const char* masks[] = {"mc-c", "mc-d", "mc-e"};
    for (int i = 0; i < lines; ++i) {
        const double lw = (0.62 - 0.12 * i) * w;
        const double lx = centered_text ? (w - lw) / 2.0 : 0.08 * w;
        const double ly = text_top + i * line_h * 1.25;
        // mask sits behind its line
        d.layers.push_back({masks[i],
                            Rect{lx - 0.02 * w, ly - 0.015 * h, lw + 0.04 * w, line_h * 1.06},
                            i == 0 ? "yellow" : "", 0.85, 0, 0, "assets/mask-pill.png",
                            roles[i]});
        d.layers.push_back({roles[i], Rect{lx, ly, lw, line_h}, text_color, 1.0,
                            line_h * 0.72, caps[std::size_t(i)], "", ""});
    }

    // product band in the lower half
    const double band_y = 0.52 * h;
    const double band_h = 0.42 * h;
    const double band_w = 0.84 * w;
    const double band_x = 0.08 * w;
    const double slot_w = band_w / slots;
    for (int i = 0; i < slots; ++i) {
        d.layers.push_back({"product-" + std::to_string(i + 1),
                            Rect{band_x + i * slot_w + slot_w * 0.06, band_y, slot_w * 0.88,
                                 band_h},
                            "", 1.0, 0, 0, "", ""});
    }

    d.layers.push_back({"ornament-a-1", Rect{0.015 * w, 0.015 * h, 0.09 * w, 0.09 * w}, "",
                        1.0, 0, 0, "assets/flourish.png", ""});
    d.layers.push_back({"ornament-b-1",
                        Rect{band_x + band_w - 0.07 * w, band_y - 0.05 * h, 0.08 * w, 0.08 * w},
                        "", 1.0, 0, 0, "assets/burst.png", "product-" + std::to_string(slots)});
    d.layers.push_back({"logo", Rect{w - 0.14 * w, h - 0.08 * h, 0.11 * w, 0.055 * h}, "", 1.0,
                        0, 0, "assets/logo.png", ""});
    return d;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    std::ofstream f(path);
    f << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path out_root = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
    const fs::path lib = out_root / "library";
    fs::create_directories(lib / "templates");
    fs::create_directories(lib / "assets");
    fs::create_directories(out_root / "elements");
    fs::create_directories(out_root / "products");
    fs::create_directories(out_root / "broken_library" / "templates");
    fs::create_directories(out_root / "broken_library" / "assets");

    // ---- shared rasters
    png_save(vertical_gradient(200, 200, Rgb{250, 250, 250}, Rgb{210, 215, 230}),
             lib / "assets" / "bg-soft.png");
    png_save(vertical_gradient(200, 200, Rgb{40, 40, 70}, Rgb{10, 10, 20}),
             lib / "assets" / "bg-night.png");
    png_save(rounded_rect_cutout(160, 48, Rgb{255, 255, 255}, 0.5),
             lib / "assets" / "mask-pill.png");
    png_save(corner_flourish(96, Rgb{240, 200, 60}), lib / "assets" / "flourish.png");
    png_save(star_burst(80, Rgb{255, 120, 40}), lib / "assets" / "burst.png");
    png_save(logo_block(88, 44), lib / "assets" / "logo.png");

    // ---- templates: spans 1-3 lines, 1-6 slots, sizes, series, colors
    std::vector<TemplateDef> defs;
    defs.push_back(build_template("tpl-001", "S1", 800, 800, 2, 1, "white", "assets/bg-soft.png",
                                  "black", {8, 12, 6}, false, {"promo", "clean"},
                                  {"electronics", "general"}, {}));
    defs.push_back(build_template("tpl-002", "S1", 800, 800, 2, 2, "white", "assets/bg-soft.png",
                                  "black", {10, 14, 6}, true, {"promo"}, {"electronics"}, {1}));
    defs.push_back(build_template("tpl-003", "S1", 800, 400, 1, 1, "yellow", "", "black", {6, 6, 6},
                                  true, {"promo", "loud"}, {"grocery", "general"}, {1, 2}));
    defs.push_back(build_template("tpl-004", "S2", 640, 640, 3, 1, "black", "assets/bg-night.png",
                                  "white", {9, 13, 5}, false, {"festive"}, {"fashion", "general"},
                                  {}));
    defs.push_back(build_template("tpl-005", "S2", 900, 500, 2, 3, "blue", "", "white",
                                  {12, 16, 8}, false, {"festive", "promo"}, {"general"}, {2}));
    defs.push_back(build_template("tpl-006", "S3", 600, 800, 1, 1, "red", "", "white",
                                  {5, 5, 5}, true, {"loud"}, {"grocery"}, {}));
    defs.push_back(build_template("tpl-007", "S3", 750, 450, 2, 2, "orange", "", "black",
                                  {11, 15, 7}, false, {"promo"}, {"general", "grocery"}, {}));
    defs.push_back(build_template("tpl-008", "S4", 960, 640, 3, 4, "white", "assets/bg-soft.png",
                                  "black", {14, 18, 9}, true, {"clean"}, {"electronics"}, {}));
    defs.push_back(build_template("tpl-009", "S4", 800, 800, 2, 5, "olivine", "", "black",
                                  {9, 12, 6}, false, {"clean", "festive"}, {"general"}, {}));
    defs.push_back(build_template("tpl-010", "S5", 800, 800, 3, 6, "purple", "", "white",
                                  {8, 10, 4}, true, {"festive"}, {"fashion"}, {}));
    defs.push_back(build_template("tpl-011", "S5", 640, 640, 1, 2, "green", "", "white",
                                  {7, 7, 7}, false, {"clean"}, {"grocery", "general"}, {}));
    defs.push_back(build_template("tpl-012", "S6", 800, 400, 2, 1, "wine", "", "white",
                                  {13, 17, 8}, true, {"promo", "festive"}, {"fashion"}, {}));
    defs.push_back(build_template("tpl-013", "S6", 800, 800, 3, 2, "turquoise", "", "black",
                                  {10, 14, 5}, false, {"clean"}, {"general"}, {}));
    defs.push_back(build_template("tpl-014", "S6", 900, 500, 1, 3, "magenta", "", "white",
                                  {6, 6, 6}, true, {"loud", "promo"}, {"general"}, {}));

    nlohmann::json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["name"] = "fixture library";
    manifest["palette"] = palette_to_json(kPalette);
    manifest["templates"] = nlohmann::json::array();
    for (const TemplateDef& d : defs) {
        manifest["templates"].push_back(d.id);
        write_json(lib / "templates" / (d.id + ".json"), template_def_to_json(d));
    }
    write_json(lib / "manifest.json", manifest);

    // ---- element library
    {
        nlohmann::json em;
        em["schema_version"] = kSchemaVersion;
        em["elements"] = nlohmann::json::array();
        const struct {
            const char* id;
            const char* kind;
            const char* color;
            std::vector<std::string> tags;
        } els[] = {
            {"el-pill-white", "mc-c", "white", {"clean", "promo"}},
            {"el-pill-yellow", "mc-c", "yellow", {"promo", "loud"}},
            {"el-pill-red", "mc-c", "red", {"loud", "festive"}},
            {"el-strip-blue", "mc-d", "blue", {"clean"}},
            {"el-strip-orange", "mc-d", "orange", {"promo", "festive"}},
            {"el-tag-black", "mc-e", "black", {"clean", "promo"}},
            {"el-tag-wine", "mc-e", "wine", {"festive"}},
            {"el-corner-gold", "ornament-a", "yellow", {"festive", "promo"}},
            {"el-corner-teal", "ornament-a", "turquoise", {"clean"}},
            {"el-burst-orange", "ornament-b", "orange", {"loud", "promo"}},
            {"el-burst-violet", "ornament-b", "purple", {"festive"}},
        };
        for (const auto& e : els) {
            const std::string file = std::string(e.id) + ".png";
            Image img;
            if (std::string(e.kind) == "ornament-a") {
                img = corner_flourish(96, kPalette.anchor(e.color));
            } else if (std::string(e.kind) == "ornament-b") {
                img = star_burst(80, kPalette.anchor(e.color));
            } else {
                img = rounded_rect_cutout(160, 48, kPalette.anchor(e.color), 0.5, 230);
            }
            png_save(img, out_root / "elements" / file);
            em["elements"].push_back({{"id", e.id},
                                      {"kind", e.kind},
                                      {"color", e.color},
                                      {"style_tags", e.tags},
                                      {"path", file}});
        }
        write_json(out_root / "elements" / "manifest.json", em);
    }

    // ---- product cutouts: varied aspect profiles for the decision tables
    const struct {
        const char* file;
        int w, h;
        Rgb color;
        bool boxy;
    } prods[] = {
        {"p1-tall-red.png", 120, 200, Rgb{200, 40, 40}, false},
        {"p2-wide-blue.png", 220, 120, Rgb{40, 70, 200}, true},
        {"p3-square-green.png", 160, 160, Rgb{40, 160, 70}, true},
        {"p4-slim-violet.png", 80, 220, Rgb{130, 60, 180}, false},
        {"p5-wide-amber.png", 240, 110, Rgb{230, 160, 40}, true},
        {"p6-tall-teal.png", 110, 190, Rgb{40, 180, 170}, false},
        {"p7-square-plum.png", 150, 150, Rgb{120, 40, 90}, true},
        {"p8-slim-slate.png", 70, 210, Rgb{90, 100, 120}, false},
    };
    for (const auto& p : prods) {
        const Image img = p.boxy ? rounded_rect_cutout(p.w, p.h, p.color, 0.25)
                                 : ellipse_cutout(p.w, p.h, p.color);
        png_save(img, out_root / "products" / p.file);
    }

    // ---- request files (batch inputs); paths relative to fixtures/
    {
        std::ofstream req(out_root / "requests.txt");
        const char* texts_pool[][3] = {
            {"Mega Sale Weekend", "Up to half price", "Shop now"},
            {"New Season Drop", "Fresh styles daily", "Browse"},
            {"Full discount frenzy", "Members save more", "Join free"},
            {"Weekly Grocery Deals", "Fresh and local", "Order today"},
            {"Flash discount hours", "Act before midnight", "Grab it"},
        };
        const char* sizes[] = {"800x800", "800x400", "640x640", "900x500", "750x450"};
        const char* product_sets[] = {
            "--product products/p1-tall-red.png:general",
            "--product products/p2-wide-blue.png:electronics",
            "--product products/p3-square-green.png:general --product products/p6-tall-teal.png:general",
            "--product products/p4-slim-violet.png:fashion --product products/p8-slim-slate.png:fashion",
            "--product products/p5-wide-amber.png:grocery",
        };
        Rng rng(20240817);
        for (int i = 0; i < 50; ++i) {
            const int tp = int(rng.next_int(0, 4));
            const int lines = 1 + int(rng.next_int(0, 2));
            req << product_sets[std::size_t(rng.next_int(0, 4))];
            for (int l = 0; l < lines; ++l) req << " --text \"" << texts_pool[tp][l] << '"';
            req << " --size " << sizes[std::size_t(rng.next_int(0, 4))];
            req << " --department " << rng.next_int(0, 2);
            req << " --seed " << (1000 + i);
            req << '\n';
        }
    }

    // ---- broken library: seeded violations for negative lint tests
    {
        nlohmann::json bm;
        bm["schema_version"] = kSchemaVersion;
        bm["name"] = "broken fixture library";
        bm["palette"] = palette_to_json(kPalette);
        bm["templates"] = {"bad-001", "bad-002", "bad-003"};

        // bad-001: mask without bound_to
        TemplateDef b1 = build_template("bad-001", "B1", 800, 800, 1, 1, "white", "", "black",
                                        {8, 8, 8}, false, {"promo"}, {"general"}, {});
        nlohmann::json j1 = template_def_to_json(b1);
        for (auto& lj : j1["layers"])
            if (lj["name"] == "mc-c") lj.erase("bound_to");
        write_json(out_root / "broken_library" / "templates" / "bad-001.json", j1);

        // bad-002: layer name outside the taxonomy
        TemplateDef b2 = build_template("bad-002", "B1", 800, 800, 1, 1, "white", "", "black",
                                        {8, 8, 8}, false, {"promo"}, {"general"}, {});
        nlohmann::json j2 = template_def_to_json(b2);
        j2["layers"].push_back({{"name", "sticker-1"},
                                {"bbox", {10.0, 10.0, 50.0, 50.0}},
                                {"z", j2["layers"].size()}});
        write_json(out_root / "broken_library" / "templates" / "bad-002.json", j2);

        // bad-003: capacity above the 20-word bound
        TemplateDef b3 = build_template("bad-003", "B1", 800, 800, 1, 1, "white", "", "black",
                                        {25, 8, 8}, false, {"promo"}, {"general"}, {});
        write_json(out_root / "broken_library" / "templates" / "bad-003.json",
                   template_def_to_json(b3));
        write_json(out_root / "broken_library" / "manifest.json", bm);

        // assets referenced by the broken templates
        png_save(rounded_rect_cutout(160, 48, Rgb{255, 255, 255}, 0.5),
                 out_root / "broken_library" / "assets" / "mask-pill.png");
        png_save(corner_flourish(96, Rgb{240, 200, 60}),
                 out_root / "broken_library" / "assets" / "flourish.png");
        png_save(star_burst(80, Rgb{255, 120, 40}),
                 out_root / "broken_library" / "assets" / "burst.png");
        png_save(logo_block(88, 44), out_root / "broken_library" / "assets" / "logo.png");
    }

    // ---- default engine config pointing at the fixtures
    {
        nlohmann::json cfg;
        cfg["schema_version"] = kSchemaVersion;
        cfg["paths"] = {{"template_library", "library"},
                        {"element_library", "elements"},
                        {"rank_model", ""},
                        {"textnet_model", ""}};
        cfg["recall"] = {{"top_k", 10}};
        cfg["prerank"] = {{"top_k", 10}};
        cfg["adjuster"] = {{"budget", 200}};
        cfg["seed"] = 1;
        write_json(out_root / "config.json", cfg);
    }

    // ---- checksum manifest over everything generated above
    {
        nlohmann::json fm;
        fm["schema_version"] = kSchemaVersion;
        std::map<std::string, std::uint32_t> sums;
        for (const auto& entry : fs::recursive_directory_iterator(out_root)) {
            if (!entry.is_regular_file()) continue;
            const std::string rel = fs::relative(entry.path(), out_root).generic_string();
            if (rel == "fixtures_manifest.json") continue;
            sums[rel] = file_crc32(entry.path());
        }
        nlohmann::json checks = nlohmann::json::object();
        for (const auto& [rel, crc] : sums) checks[rel] = crc;
        fm["crc32"] = checks;
        fm["counts"] = {{"templates", defs.size()},
                        {"elements", 11},
                        {"products", 8},
                        {"request_lines", 50},
                        {"broken_templates", 3}};
        write_json(out_root / "fixtures_manifest.json", fm);
    }

    std::printf("fixtures written to %s\n", out_root.string().c_str());
    return 0;
}
