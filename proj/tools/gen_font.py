#!/usr/bin/env python3
"""Regenerate include/bannergen/font_data.hpp.

Rasterizes ASCII 32..126 from DejaVu Sans Mono into an 8x16 bitmap grid.
Run from the repository root. The output header is committed so builds do
not depend on system fonts.
"""
import os
from PIL import Image, ImageDraw, ImageFont

FONT_CANDIDATES = [
    "/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf",
]
OUT = os.path.join(os.path.dirname(__file__), "..", "include", "bannergen", "font_data.hpp")
CELL_W, CELL_H = 8, 16


def find_font():
    for path in FONT_CANDIDATES:
        if os.path.exists(path):
            return path
    raise SystemExit("no candidate font found")


def render_glyph(font, ch):
    img = Image.new("L", (CELL_W * 3, CELL_H * 3), 0)
    draw = ImageDraw.Draw(img)
    draw.text((1, 0), ch, font=font, fill=255)
    rows = []
    for y in range(CELL_H):
        bits = 0
        for x in range(CELL_W):
            if img.getpixel((x, y)) >= 96:
                bits |= 1 << (7 - x)
        rows.append(bits)
    return rows


def main():
    font = ImageFont.truetype(find_font(), 14)
    glyphs = {ch: render_glyph(font, chr(ch)) for ch in range(32, 127)}

    lines = []
    lines.append("#pragma once")
    lines.append("")
    lines.append("// Generated by tools/gen_font.py from DejaVu Sans Mono (Bitstream Vera")
    lines.append("// license). 8x16 cells, ASCII 32..126, bit 7 = leftmost pixel.")
    lines.append("")
    lines.append("#include <cstdint>")
    lines.append("")
    lines.append("namespace bannergen::font_data {")
    lines.append("")
    lines.append(f"constexpr int kCellWidth = {CELL_W};")
    lines.append(f"constexpr int kCellHeight = {CELL_H};")
    lines.append("constexpr char32_t kFirstCodepoint = 32;")
    lines.append("constexpr char32_t kLastCodepoint = 126;")
    lines.append("")
    lines.append("constexpr std::uint8_t kGlyphs[95][16] = {")
    for ch in range(32, 127):
        rows = ", ".join(f"0x{b:02x}" for b in glyphs[ch])
        label = chr(ch) if chr(ch) != "\\" else "backslash"
        lines.append(f"    {{{rows}}},  // '{label}'")
    lines.append("};")
    lines.append("")
    lines.append("}  // namespace bannergen::font_data")
    lines.append("")
    with open(OUT, "w") as f:
        f.write("\n".join(lines))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
