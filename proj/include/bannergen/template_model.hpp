#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannergen/color.hpp"
#include "bannergen/geometry.hpp"
#include "bannergen/image.hpp"
#include "bannergen/png_io.hpp"

namespace bannergen {

constexpr int kSchemaVersion = 1;
constexpr int kCapacityMin = 4;
constexpr int kCapacityMax = 20;

enum class LayerKind {
    Background,
    Product,
    TextMain,
    TextSub,
    TextAction,
    OrnamentTrim,
    OrnamentFree,
    MaskMain,
    MaskSub,
    MaskAction,
    Logo,
    Unknown,
};

inline bool is_text(LayerKind k) {
    return k == LayerKind::TextMain || k == LayerKind::TextSub || k == LayerKind::TextAction;
}
inline bool is_mask(LayerKind k) {
    return k == LayerKind::MaskMain || k == LayerKind::MaskSub || k == LayerKind::MaskAction;
}
inline bool is_ornament(LayerKind k) {
    return k == LayerKind::OrnamentTrim || k == LayerKind::OrnamentFree;
}

inline const char* layer_kind_name(LayerKind k) {
    switch (k) {
        case LayerKind::Background: return "background";
        case LayerKind::Product: return "product";
        case LayerKind::TextMain: return "text-main";
        case LayerKind::TextSub: return "text-sub";
        case LayerKind::TextAction: return "text-action";
        case LayerKind::OrnamentTrim: return "ornament-trim";
        case LayerKind::OrnamentFree: return "ornament-free";
        case LayerKind::MaskMain: return "mask-main";
        case LayerKind::MaskSub: return "mask-sub";
        case LayerKind::MaskAction: return "mask-action";
        case LayerKind::Logo: return "logo";
        case LayerKind::Unknown: break;
    }
    return "unknown";
}

/// Layer-name taxonomy: background, product-N, text-main/-sub/-action,
/// ornament-a-N (trim), ornament-b-N (free), mc-c/-d/-e (masks), logo.
/// Returns Unknown for names outside the taxonomy; index is N where present.
inline std::pair<LayerKind, int> classify_layer_name(const std::string& name) {
    auto numbered = [&](const std::string& prefix) -> int {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return -1;
        int n = 0;
        for (std::size_t i = prefix.size(); i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
            n = n * 10 + (name[i] - '0');
        }
        return n >= 1 ? n : -1;
    };
    if (name == "background") return {LayerKind::Background, 0};
    if (name == "logo") return {LayerKind::Logo, 0};
    if (name == "text-main") return {LayerKind::TextMain, 0};
    if (name == "text-sub") return {LayerKind::TextSub, 0};
    if (name == "text-action") return {LayerKind::TextAction, 0};
    if (name == "mc-c") return {LayerKind::MaskMain, 0};
    if (name == "mc-d") return {LayerKind::MaskSub, 0};
    if (name == "mc-e") return {LayerKind::MaskAction, 0};
    if (int n = numbered("product-"); n > 0) return {LayerKind::Product, n};
    if (int n = numbered("ornament-a-"); n > 0) return {LayerKind::OrnamentTrim, n};
    if (int n = numbered("ornament-b-"); n > 0) return {LayerKind::OrnamentFree, n};
    return {LayerKind::Unknown, 0};
}

/// Text role a mask subtype binds to.
inline LayerKind mask_target_kind(LayerKind mask) {
    switch (mask) {
        case LayerKind::MaskMain: return LayerKind::TextMain;
        case LayerKind::MaskSub: return LayerKind::TextSub;
        case LayerKind::MaskAction: return LayerKind::TextAction;
        default: return LayerKind::Unknown;
    }
}

struct Layer {
    std::string name;
    LayerKind kind = LayerKind::Unknown;
    int index = 0;  // N in product-N / ornament-*-N
    Rect bbox;
    int z = 0;
    std::string color;      // palette name, empty = none
    double opacity = 1.0;
    double font_size = 0;   // text layers
    int capacity = 0;       // text layers, max character count
    std::string asset_ref;  // raster-backed layers, path relative to library root
    std::string bound_to;   // mask / free-ornament binding, empty = none

    double aspect() const { return bbox.aspect(); }
    bool operator==(const Layer&) const = default;
};

struct Template {
    std::string id;
    std::string series_id;
    int width = 0;
    int height = 0;
    std::vector<std::string> style_tags;
    std::vector<std::string> category_tags;
    std::vector<int> department_ids;
    std::vector<Layer> layers;  // sorted by z after finalize

    // derived from layers
    int text_line_count = 0;
    double avg_word_capacity = 0.0;
    int product_slot_count = 0;

    void recompute_derived() {
        for (Layer& l : layers) std::tie(l.kind, l.index) = classify_layer_name(l.name);
        std::stable_sort(layers.begin(), layers.end(),
                         [](const Layer& a, const Layer& b) { return a.z < b.z; });
        text_line_count = 0;
        product_slot_count = 0;
        int cap_sum = 0;
        for (const Layer& l : layers) {
            if (is_text(l.kind)) {
                ++text_line_count;
                cap_sum += l.capacity;
            } else if (l.kind == LayerKind::Product) {
                ++product_slot_count;
            }
        }
        avg_word_capacity = text_line_count > 0 ? double(cap_sum) / text_line_count : 0.0;
    }

    const Layer* find_layer(const std::string& name) const {
        for (const Layer& l : layers)
            if (l.name == name) return &l;
        return nullptr;
    }

    std::vector<const Layer*> layers_of_kind(LayerKind k) const {
        std::vector<const Layer*> out;
        for (const Layer& l : layers)
            if (l.kind == k) out.push_back(&l);
        return out;
    }

    const Layer* background() const {
        auto v = layers_of_kind(LayerKind::Background);
        return v.empty() ? nullptr : v.front();
    }

    /// Background color if declared, else the first declared layer color.
    std::string primary_color() const {
        if (const Layer* bg = background(); bg && !bg->color.empty()) return bg->color;
        for (const Layer& l : layers)
            if (!l.color.empty()) return l.color;
        return {};
    }

    Rect text_area() const {
        Rect area{};
        for (const Layer& l : layers)
            if (is_text(l.kind)) area = union_rect(area, l.bbox);
        return area;
    }

    Rect product_area() const {
        Rect area{};
        for (const Layer& l : layers)
            if (l.kind == LayerKind::Product) area = union_rect(area, l.bbox);
        return area;
    }

    Rect canvas() const { return Rect{0, 0, double(width), double(height)}; }
};

struct Violation {
    std::string code;
    std::string layer;   // offending layer name, empty for template-level issues
    std::string detail;

    std::string format() const {
        std::string s = code;
        if (!layer.empty()) s += " layer=" + layer;
        if (!detail.empty()) s += " (" + detail + ")";
        return s;
    }
};

/// Validate one parsed descriptor against the design constraints. Returns
/// every violated constraint, not just the first.
inline std::vector<Violation> lint_template(const Template& t, const Palette& palette) {
    std::vector<Violation> out;
    const Rect canvas = t.canvas();

    if (t.id.empty()) out.push_back({"MissingId", "", ""});
    if (t.width <= 0 || t.height <= 0)
        out.push_back({"BadCanvasSize", "", std::to_string(t.width) + "x" + std::to_string(t.height)});
    if (t.style_tags.empty()) out.push_back({"MissingRequiredTags", "", "style_tags empty"});
    if (t.category_tags.empty()) out.push_back({"MissingRequiredTags", "", "category_tags empty"});

    std::map<std::string, int> name_count;
    for (const Layer& l : t.layers) ++name_count[l.name];
    for (const auto& [name, n] : name_count)
        if (n > 1) out.push_back({"DuplicateLayerName", name, std::to_string(n) + " occurrences"});

    std::vector<int> zs;
    int text_lines = 0;
    for (const Layer& l : t.layers) {
        zs.push_back(l.z);
        const auto [kind, idx] = classify_layer_name(l.name);
        if (kind == LayerKind::Unknown) out.push_back({"UnknownLayerKind", l.name, ""});
        if (l.bbox.w <= 0 || l.bbox.h <= 0) out.push_back({"BadGeometry", l.name, "non-positive size"});
        if (!contains(canvas, l.bbox))
            out.push_back({"BboxOutsideCanvas", l.name, ""});
        if (l.opacity < 0.0 || l.opacity > 1.0)
            out.push_back({"BadOpacity", l.name, std::to_string(l.opacity)});
        if (!l.color.empty() && !palette.has(l.color))
            out.push_back({"UnknownColor", l.name, l.color});
        if (is_text(kind)) {
            ++text_lines;
            if (l.capacity < kCapacityMin || l.capacity > kCapacityMax)
                out.push_back({"CapacityOutOfRange", l.name, std::to_string(l.capacity)});
            if (l.font_size <= 0) out.push_back({"BadFontSize", l.name, ""});
        }
        if (!l.bound_to.empty()) {
            const Layer* target = t.find_layer(l.bound_to);
            if (target == nullptr) {
                out.push_back({"DanglingBoundTo", l.name, "-> " + l.bound_to});
            } else if (is_mask(kind) && target->kind != mask_target_kind(kind)) {
                out.push_back({"MaskBindingWrongKind", l.name, "-> " + l.bound_to});
            }
        } else if (is_mask(kind)) {
            out.push_back({"MaskUnbound", l.name, ""});
        }
    }
    if (text_lines < 1 || text_lines > 3)
        out.push_back({"TextLineCountOutOfRange", "", std::to_string(text_lines)});

    std::sort(zs.begin(), zs.end());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] != static_cast<int>(i)) {
            out.push_back({"BadZOrder", "", "z indices are not a permutation of 0..n-1"});
            break;
        }
    }
    return out;
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    std::vector<std::string> items;
    explicit ValidationError(std::vector<std::string> v)
        : std::runtime_error(join(v)), items(std::move(v)) {}
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "template library validation failed:";
        for (const auto& e : v) s += "\n  " + e;
        return s;
    }
};

/// Raster assets keyed by ref. A ref is a path relative to the library root,
/// optionally carrying a "#hue<deg>" suffix: the base raster hue-rotated.
/// Rotated variants materialize lazily and are cached. Thread-safe.
class AssetStore {
public:
    AssetStore() = default;
    explicit AssetStore(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }

    static std::pair<std::string, double> split_ref(const std::string& ref) {
        const auto pos = ref.rfind("#hue");
        if (pos == std::string::npos) return {ref, 0.0};
        return {ref.substr(0, pos), std::stod(ref.substr(pos + 4))};
    }

    static std::string make_ref(const std::string& base, double hue_deg) {
        double h = std::fmod(hue_deg, 360.0);
        if (h < 0) h += 360.0;
        if (h == 0.0) return base;
        std::ostringstream os;
        os << base << "#hue" << h;
        return os.str();
    }

    bool exists(const std::string& ref) const {
        const auto [base, deg] = split_ref(ref);
        (void)deg;
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (cache_.count(base)) return true;
        }
        return std::filesystem::exists(root_ / base);
    }

    /// Register an in-memory asset (expanded libraries, tests).
    void put(const std::string& ref, Image img) {
        std::lock_guard<std::mutex> lock(mu_);
        cache_[ref] = std::make_shared<Image>(std::move(img));
    }

    std::shared_ptr<const Image> get(const std::string& ref) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = cache_.find(ref); it != cache_.end()) return it->second;
        }
        const auto [base, deg] = split_ref(ref);
        std::shared_ptr<const Image> img;
        if (deg != 0.0) {
            img = std::make_shared<Image>(hue_rotate_image(*get(base), deg));
        } else {
            img = std::make_shared<Image>(png_load(root_ / base));
        }
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(ref, std::move(img)).first->second;
    }

private:
    std::filesystem::path root_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::shared_ptr<const Image>> cache_;
};

struct TemplateLibrary {
    std::string name;
    Palette palette;
    std::vector<Template> templates;  // sorted by id
    std::shared_ptr<AssetStore> assets;

    const Template* find(const std::string& id) const {
        for (const Template& t : templates)
            if (t.id == id) return &t;
        return nullptr;
    }
};

namespace detail {

inline Layer layer_from_json(const nlohmann::json& j) {
    Layer l;
    l.name = j.at("name").get<std::string>();
    const auto& bb = j.at("bbox");
    l.bbox = Rect{bb.at(0).get<double>(), bb.at(1).get<double>(), bb.at(2).get<double>(),
                  bb.at(3).get<double>()};
    l.z = j.at("z").get<int>();
    l.color = j.value("color", std::string());
    l.opacity = j.value("opacity", 1.0);
    l.font_size = j.value("font_size", 0.0);
    l.capacity = j.value("capacity", 0);
    l.asset_ref = j.value("asset_ref", std::string());
    l.bound_to = j.value("bound_to", std::string());
    std::tie(l.kind, l.index) = classify_layer_name(l.name);
    return l;
}

inline nlohmann::json layer_to_json(const Layer& l) {
    nlohmann::json j;
    j["name"] = l.name;
    j["bbox"] = {l.bbox.x, l.bbox.y, l.bbox.w, l.bbox.h};
    j["z"] = l.z;
    if (!l.color.empty()) j["color"] = l.color;
    if (l.opacity != 1.0) j["opacity"] = l.opacity;
    if (l.font_size != 0.0) j["font_size"] = l.font_size;
    if (l.capacity != 0) j["capacity"] = l.capacity;
    if (!l.asset_ref.empty()) j["asset_ref"] = l.asset_ref;
    if (!l.bound_to.empty()) j["bound_to"] = l.bound_to;
    return j;
}

}  // namespace detail

inline Template template_from_json(const nlohmann::json& j) {
    Template t;
    const int ver = j.value("schema_version", 0);
    if (ver != kSchemaVersion)
        throw ParseError("unsupported schema_version " + std::to_string(ver));
    t.id = j.at("id").get<std::string>();
    t.series_id = j.at("series_id").get<std::string>();
    t.width = j.at("width").get<int>();
    t.height = j.at("height").get<int>();
    t.style_tags = j.value("style_tags", std::vector<std::string>{});
    t.category_tags = j.value("category_tags", std::vector<std::string>{});
    t.department_ids = j.value("department_ids", std::vector<int>{});
    for (const auto& lj : j.at("layers")) t.layers.push_back(detail::layer_from_json(lj));
    t.recompute_derived();
    return t;
}

inline nlohmann::json template_to_json(const Template& t) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["id"] = t.id;
    j["series_id"] = t.series_id;
    j["width"] = t.width;
    j["height"] = t.height;
    j["style_tags"] = t.style_tags;
    j["category_tags"] = t.category_tags;
    j["department_ids"] = t.department_ids;
    j["layers"] = nlohmann::json::array();
    for (const Layer& l : t.layers) j["layers"].push_back(detail::layer_to_json(l));
    return j;
}

inline Palette palette_from_json(const nlohmann::json& j) {
    std::vector<std::pair<std::string, Rgb>> entries;
    for (const auto& [name, rgb] : j.items()) {
        entries.emplace_back(name, Rgb{rgb.at(0).get<std::uint8_t>(), rgb.at(1).get<std::uint8_t>(),
                                       rgb.at(2).get<std::uint8_t>()});
    }
    return Palette(std::move(entries));
}

inline nlohmann::json palette_to_json(const Palette& p) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : p.entries()) j[e.name] = {e.anchor.r, e.anchor.g, e.anchor.b};
    return j;
}

struct LibraryLoadResult {
    TemplateLibrary library;   // templates that parsed, valid or not
    std::vector<std::string> problems;
};

/// Shared loader core: parses everything it can and collects every
/// violation instead of stopping at the first.
inline LibraryLoadResult load_library_lenient(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = root / "manifest.json";
    if (!fs::exists(manifest_path))
        throw ParseError("missing manifest: " + manifest_path.string());

    nlohmann::json manifest;
    try {
        std::ifstream f(manifest_path);
        manifest = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }

    LibraryLoadResult result;
    TemplateLibrary& lib = result.library;
    std::vector<std::string>& problems = result.problems;
    try {
        const int ver = manifest.value("schema_version", 0);
        if (ver != kSchemaVersion)
            throw ParseError("unsupported schema_version " + std::to_string(ver));
        lib.name = manifest.value("name", std::string());
        lib.palette = palette_from_json(manifest.at("palette"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }
    if (lib.palette.size() != 14)
        problems.push_back("palette must declare exactly 14 named colors, got " +
                           std::to_string(lib.palette.size()));

    lib.assets = std::make_shared<AssetStore>(root);

    std::vector<std::string> ids = manifest.value("templates", std::vector<std::string>{});
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 1; i < ids.size(); ++i)
        if (ids[i] == ids[i - 1]) problems.push_back("duplicate id in manifest: " + ids[i]);

    for (const std::string& id : ids) {
        const fs::path tpath = root / "templates" / (id + ".json");
        nlohmann::json tj;
        try {
            std::ifstream f(tpath);
            if (!f) throw ParseError("missing template file: " + tpath.string());
            tj = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(tpath.string() + ": " + e.what());
        }
        Template t;
        try {
            t = template_from_json(tj);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(tpath.string() + ": " + e.what());
        }
        if (t.id != id)
            problems.push_back(id + ": file declares mismatching id '" + t.id + "'");
        for (const Violation& v : lint_template(t, lib.palette))
            problems.push_back(t.id + ": " + v.format());
        for (const Layer& l : t.layers) {
            if (!l.asset_ref.empty() && !lib.assets->exists(l.asset_ref))
                problems.push_back(t.id + ": layer " + l.name + " asset_ref not found: " +
                                   l.asset_ref);
        }
        if (lib.find(t.id) != nullptr) {
            problems.push_back("duplicate id: " + t.id);
        } else {
            lib.templates.push_back(std::move(t));
        }
    }
    std::sort(lib.templates.begin(), lib.templates.end(),
              [](const Template& a, const Template& b) { return a.id < b.id; });
    return result;
}

/// Load and validate a template library from disk. Throws ParseError on
/// malformed files (with file context) and ValidationError carrying every
/// violation across the whole library.
inline TemplateLibrary load_library(const std::filesystem::path& root) {
    LibraryLoadResult result = load_library_lenient(root);
    if (!result.problems.empty()) throw ValidationError(std::move(result.problems));
    return std::move(result.library);
}

/// Canonical serialization of a loaded library (stable key order), used by
/// the load-twice determinism check.
inline std::string serialize_library(const TemplateLibrary& lib) {
    nlohmann::json j;
    j["name"] = lib.name;
    j["palette"] = palette_to_json(lib.palette);
    j["templates"] = nlohmann::json::array();
    for (const Template& t : lib.templates) j["templates"].push_back(template_to_json(t));
    return j.dump(2);
}

/// Color-migration expansion: fresh id, same geometry, every layer color and
/// referenced raster hue-rotated. Requires hue_shift in (0, 360).
inline Template expand_by_color(const Template& t, double hue_shift, const Palette& palette) {
    if (!(hue_shift > 0.0 && hue_shift < 360.0))
        throw std::invalid_argument("hue_shift must be in (0, 360)");
    Template out = t;
    std::ostringstream id;
    id << t.id << "-h" << hue_shift;
    out.id = id.str();  // series_id preserved
    for (Layer& l : out.layers) {
        if (!l.color.empty()) {
            // rotate the anchor, then snap back to the nearest palette name
            const Rgb rotated = hue_rotate(palette.anchor(l.color), hue_shift);
            l.color = palette.classify(rotated);
        }
        if (!l.asset_ref.empty()) {
            const auto [base, deg] = AssetStore::split_ref(l.asset_ref);
            l.asset_ref = AssetStore::make_ref(base, deg + hue_shift);
        }
    }
    return out;
}

}  // namespace bannergen
