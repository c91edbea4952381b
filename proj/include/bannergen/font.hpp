#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bannergen/font_data.hpp"
#include "bannergen/geometry.hpp"
#include "bannergen/text_util.hpp"

namespace bannergen {

/// Embedded 8x16 bitmap font (ASCII coverage). Codepoints without a glyph
/// render as a hollow replacement box and are counted by the caller, so
/// non-Latin copy degrades visibly but deterministically.
class BitmapFont {
public:
    static constexpr int kCellW = font_data::kCellWidth;
    static constexpr int kCellH = font_data::kCellHeight;

    static bool has_glyph(char32_t cp) {
        return cp >= font_data::kFirstCodepoint && cp <= font_data::kLastCodepoint;
    }

    /// Row bitmap for a codepoint, replacement box when missing.
    static const std::uint8_t* glyph(char32_t cp) {
        static constexpr std::uint8_t replacement[16] = {
            0x00, 0x00, 0x7e, 0x42, 0x42, 0x42, 0x42, 0x42,
            0x42, 0x42, 0x42, 0x42, 0x7e, 0x00, 0x00, 0x00};
        if (!has_glyph(cp)) return replacement;
        return font_data::kGlyphs[cp - font_data::kFirstCodepoint];
    }

    /// Advance in font units (cells are monospaced).
    static double advance() { return double(kCellW); }

    /// Natural width of a string in px at the given size.
    static double measure(const std::string& text, double font_size) {
        const double scale = font_size / double(kCellH);
        return double(utf8_decode(text).size()) * advance() * scale;
    }
};

struct GlyphPlacement {
    char32_t codepoint = 0;
    Rect bbox;                // where the cell lands on the canvas
    bool replacement = false; // glyph missing from the font
};

struct TextLineLayout {
    std::vector<GlyphPlacement> glyphs;
    double effective_font_size = 0;
    int missing_glyphs = 0;
};

/// Left-to-right advance placement inside bbox. When the natural width
/// exceeds the box, the font size shrinks by the exact ratio in one pass;
/// the baseline row is vertically centered.
inline TextLineLayout layout_text_line(const std::string& text, const Rect& bbox,
                                       double font_size) {
    TextLineLayout out;
    const std::vector<char32_t> cps = utf8_decode(text);
    if (cps.empty() || font_size <= 0) return out;

    double size = std::min(font_size, bbox.h);
    const double natural = BitmapFont::measure(text, size);
    if (natural > bbox.w && natural > 0) size *= bbox.w / natural;
    out.effective_font_size = size;

    const double scale = size / double(BitmapFont::kCellH);
    const double adv = BitmapFont::advance() * scale;
    const double total_w = adv * double(cps.size());
    double x = bbox.x + (bbox.w - total_w) / 2.0;
    const double y = bbox.y + (bbox.h - size) / 2.0;
    for (char32_t cp : cps) {
        GlyphPlacement g;
        g.codepoint = cp;
        g.bbox = Rect{x, y, BitmapFont::kCellW * scale, size};
        g.replacement = !BitmapFont::has_glyph(cp) && !is_space_cp(cp);
        if (g.replacement) ++out.missing_glyphs;
        out.glyphs.push_back(g);
        x += adv;
    }
    return out;
}

}  // namespace bannergen
