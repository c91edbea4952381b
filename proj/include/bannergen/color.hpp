#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bannergen {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

struct Hsv {
    double h = 0;  // degrees [0, 360)
    double s = 0;  // [0, 1]
    double v = 0;  // [0, 1]
};

struct Lab {
    double l = 0, a = 0, b = 0;
};

inline Hsv rgb_to_hsv(Rgb c) {
    const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    Hsv out;
    out.v = mx;
    out.s = mx > 0 ? d / mx : 0.0;
    if (d <= 0) {
        out.h = 0;
    } else if (mx == r) {
        out.h = 60.0 * std::fmod((g - b) / d, 6.0);
    } else if (mx == g) {
        out.h = 60.0 * ((b - r) / d + 2.0);
    } else {
        out.h = 60.0 * ((r - g) / d + 4.0);
    }
    if (out.h < 0) out.h += 360.0;
    return out;
}

inline Rgb hsv_to_rgb(const Hsv& c) {
    const double h = std::fmod(std::fmod(c.h, 360.0) + 360.0, 360.0);
    const double cc = c.v * c.s;
    const double x = cc * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
    const double m = c.v - cc;
    double r = 0, g = 0, b = 0;
    if (h < 60) {
        r = cc; g = x;
    } else if (h < 120) {
        r = x; g = cc;
    } else if (h < 180) {
        g = cc; b = x;
    } else if (h < 240) {
        g = x; b = cc;
    } else if (h < 300) {
        r = x; b = cc;
    } else {
        r = cc; b = x;
    }
    auto q = [&](double v) {
        return static_cast<std::uint8_t>(std::lround(std::clamp((v + m) * 255.0, 0.0, 255.0)));
    };
    return Rgb{q(r), q(g), q(b)};
}

/// Rotate hue by `deg` in HSV space, saturation and value untouched.
inline Rgb hue_rotate(Rgb c, double deg) {
    Hsv h = rgb_to_hsv(c);
    h.h += deg;
    return hsv_to_rgb(h);
}

// CIELAB under D65, standard sRGB primaries.
inline Lab rgb_to_lab(Rgb c) {
    auto lin = [](double u) {
        u /= 255.0;
        return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
    };
    const double r = lin(c.r), g = lin(c.g), b = lin(c.b);
    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    auto f = [](double t) {
        constexpr double e = 216.0 / 24389.0;   // (6/29)^3
        constexpr double k = 24389.0 / 27.0;
        return t > e ? std::cbrt(t) : (k * t + 16.0) / 116.0;
    };
    const double fx = f(x / 0.95047);
    const double fy = f(y / 1.0);
    const double fz = f(z / 1.08883);
    return Lab{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

inline double lab_distance(const Lab& a, const Lab& b) {
    const double dl = a.l - b.l, da = a.a - b.a, db = a.b - b.b;
    return std::sqrt(dl * dl + da * da + db * db);
}

/// Named palette: 14 anchored colors. Anchor RGB values are engine
/// configuration, shipped with the template library manifest.
class Palette {
public:
    struct Entry {
        std::string name;
        Rgb anchor;
        Lab lab;
    };

    Palette() = default;

    explicit Palette(std::vector<std::pair<std::string, Rgb>> entries) {
        for (auto& [name, rgb] : entries)
            entries_.push_back(Entry{name, rgb, rgb_to_lab(rgb)});
        d_max_ = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            for (std::size_t j = i + 1; j < entries_.size(); ++j)
                d_max_ = std::max(d_max_, lab_distance(entries_[i].lab, entries_[j].lab));
    }

    static Palette default_palette() {
        return Palette({
            {"black", {0, 0, 0}},
            {"white", {255, 255, 255}},
            {"red", {255, 0, 0}},
            {"orange", {255, 165, 0}},
            {"yellow", {255, 255, 0}},
            {"olivine", {154, 185, 115}},
            {"green", {0, 128, 0}},
            {"turquoise", {64, 224, 208}},
            {"grass", {124, 252, 0}},
            {"indigo", {75, 0, 130}},
            {"blue", {0, 0, 255}},
            {"purple", {128, 0, 128}},
            {"magenta", {255, 0, 255}},
            {"wine", {114, 47, 55}},
        });
    }

    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    /// Maximum pairwise anchor distance in CIELAB.
    double max_distance() const { return d_max_; }

    bool has(std::string_view name) const {
        for (const auto& e : entries_)
            if (e.name == name) return true;
        return false;
    }

    int index_of(std::string_view name) const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    const Entry& entry(std::string_view name) const {
        const int i = index_of(name);
        if (i < 0) throw std::out_of_range("unknown palette color: " + std::string(name));
        return entries_[static_cast<std::size_t>(i)];
    }

    Rgb anchor(std::string_view name) const { return entry(name).anchor; }

    /// Nearest anchor in CIELAB; ties broken by declaration order.
    const std::string& classify(Rgb c) const {
        const Lab lab = rgb_to_lab(c);
        std::size_t best = 0;
        double best_d = lab_distance(lab, entries_[0].lab);
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            const double d = lab_distance(lab, entries_[i].lab);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return entries_[best].name;
    }

    double distance(std::string_view a, std::string_view b) const {
        return lab_distance(entry(a).lab, entry(b).lab);
    }

    /// Coarse hue families used by the pre-rank diversity quota.
    std::string_view family(std::string_view name) const {
        if (name == "black" || name == "white") return "neutral";
        if (name == "red" || name == "wine" || name == "magenta") return "red";
        if (name == "orange" || name == "yellow") return "yellow";
        if (name == "olivine" || name == "green" || name == "grass" || name == "turquoise")
            return "green";
        if (name == "indigo" || name == "blue" || name == "purple") return "blue";
        return name;  // custom palettes fall back to one family per name
    }

private:
    std::vector<Entry> entries_;
    double d_max_ = 0.0;
};

}  // namespace bannergen
