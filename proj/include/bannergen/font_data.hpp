#pragma once

// Generated by tools/gen_font.py from DejaVu Sans Mono (Bitstream Vera
// license). 8x16 cells, ASCII 32..126, bit 7 = leftmost pixel.

#include <cstdint>

namespace bannergen::font_data {

constexpr int kCellWidth = 8;
constexpr int kCellHeight = 16;
constexpr char32_t kFirstCodepoint = 32;
constexpr char32_t kLastCodepoint = 126;

constexpr std::uint8_t kGlyphs[95][16] = {
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // ' '
    {0x00, 0x00, 0x00, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x04, 0x00, 0x00, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // '!'
    {0x00, 0x00, 0x00, 0x1a, 0x1a, 0x1a, 0x1a, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '"'
    {0x00, 0x00, 0x00, 0x0d, 0x09, 0x09, 0x3f, 0x1a, 0x12, 0x7f, 0x16, 0x34, 0x24, 0x00, 0x00, 0x00},  // '#'
    {0x00, 0x00, 0x04, 0x04, 0x1e, 0x35, 0x34, 0x34, 0x1e, 0x05, 0x05, 0x25, 0x1f, 0x04, 0x04, 0x00},  // '$'
    {0x00, 0x00, 0x00, 0x38, 0x6c, 0x6c, 0x39, 0x06, 0x18, 0x27, 0x04, 0x04, 0x07, 0x00, 0x00, 0x00},  // '%'
    {0x00, 0x00, 0x00, 0x1e, 0x10, 0x10, 0x18, 0x38, 0x2c, 0x66, 0x63, 0x33, 0x1f, 0x00, 0x00, 0x00},  // '&'
    {0x00, 0x00, 0x00, 0x0c, 0x0c, 0x0c, 0x0c, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '''
    {0x00, 0x00, 0x02, 0x04, 0x04, 0x0c, 0x0c, 0x08, 0x08, 0x0c, 0x0c, 0x04, 0x04, 0x02, 0x00, 0x00},  // '('
    {0x00, 0x00, 0x08, 0x08, 0x0c, 0x04, 0x04, 0x06, 0x06, 0x04, 0x04, 0x0c, 0x08, 0x08, 0x00, 0x00},  // ')'
    {0x00, 0x00, 0x00, 0x04, 0x35, 0x1e, 0x1e, 0x35, 0x04, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '*'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x04, 0x04, 0x04, 0x7f, 0x04, 0x04, 0x04, 0x00, 0x00, 0x00, 0x00},  // '+'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c, 0x0c, 0x08, 0x00},  // ','
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '-'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // '.'
    {0x00, 0x00, 0x00, 0x01, 0x03, 0x02, 0x06, 0x04, 0x0c, 0x0c, 0x08, 0x18, 0x10, 0x30, 0x20, 0x00},  // '/'
    {0x00, 0x00, 0x00, 0x1e, 0x13, 0x31, 0x31, 0x21, 0x2d, 0x31, 0x31, 0x13, 0x1e, 0x00, 0x00, 0x00},  // '0'
    {0x00, 0x00, 0x00, 0x0c, 0x14, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x1f, 0x00, 0x00, 0x00},  // '1'
    {0x00, 0x00, 0x00, 0x1e, 0x23, 0x01, 0x03, 0x03, 0x06, 0x0c, 0x18, 0x30, 0x3f, 0x00, 0x00, 0x00},  // '2'
    {0x00, 0x00, 0x00, 0x1e, 0x23, 0x01, 0x03, 0x0e, 0x03, 0x01, 0x01, 0x23, 0x1e, 0x00, 0x00, 0x00},  // '3'
    {0x00, 0x00, 0x00, 0x07, 0x07, 0x0b, 0x1b, 0x13, 0x23, 0x3f, 0x03, 0x03, 0x03, 0x00, 0x00, 0x00},  // '4'
    {0x00, 0x00, 0x00, 0x3f, 0x30, 0x30, 0x3e, 0x23, 0x01, 0x01, 0x01, 0x23, 0x1e, 0x00, 0x00, 0x00},  // '5'
    {0x00, 0x00, 0x00, 0x0e, 0x19, 0x30, 0x20, 0x3e, 0x33, 0x31, 0x31, 0x33, 0x1e, 0x00, 0x00, 0x00},  // '6'
    {0x00, 0x00, 0x00, 0x3f, 0x01, 0x03, 0x02, 0x06, 0x06, 0x04, 0x0c, 0x08, 0x18, 0x00, 0x00, 0x00},  // '7'
    {0x00, 0x00, 0x00, 0x1e, 0x33, 0x31, 0x33, 0x1e, 0x33, 0x21, 0x21, 0x33, 0x1e, 0x00, 0x00, 0x00},  // '8'
    {0x00, 0x00, 0x00, 0x1e, 0x33, 0x21, 0x21, 0x33, 0x1f, 0x01, 0x01, 0x03, 0x1e, 0x00, 0x00, 0x00},  // '9'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c, 0x00, 0x00, 0x00, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // ':'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c, 0x00, 0x00, 0x00, 0x0c, 0x0c, 0x0c, 0x08, 0x00},  // ';'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x01, 0x07, 0x3c, 0x70, 0x3c, 0x07, 0x01, 0x00, 0x00, 0x00, 0x00},  // '<'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7f, 0x00, 0x00, 0x7f, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '='
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x20, 0x3c, 0x0f, 0x01, 0x0f, 0x3c, 0x20, 0x00, 0x00, 0x00, 0x00},  // '>'
    {0x00, 0x00, 0x00, 0x1e, 0x13, 0x01, 0x03, 0x06, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // '?'
    {0x00, 0x00, 0x00, 0x0f, 0x31, 0x20, 0x67, 0x6d, 0x48, 0x48, 0x4d, 0x67, 0x20, 0x18, 0x0f, 0x00},  // '@'
    {0x00, 0x00, 0x00, 0x0c, 0x0e, 0x1e, 0x1a, 0x13, 0x13, 0x3f, 0x21, 0x21, 0x61, 0x00, 0x00, 0x00},  // 'A'
    {0x00, 0x00, 0x00, 0x3e, 0x33, 0x31, 0x33, 0x3e, 0x31, 0x31, 0x31, 0x31, 0x3f, 0x00, 0x00, 0x00},  // 'B'
    {0x00, 0x00, 0x00, 0x0f, 0x19, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x19, 0x0f, 0x00, 0x00, 0x00},  // 'C'
    {0x00, 0x00, 0x00, 0x3e, 0x23, 0x21, 0x21, 0x21, 0x21, 0x21, 0x21, 0x23, 0x3e, 0x00, 0x00, 0x00},  // 'D'
    {0x00, 0x00, 0x00, 0x3f, 0x30, 0x30, 0x30, 0x3f, 0x30, 0x30, 0x30, 0x30, 0x3f, 0x00, 0x00, 0x00},  // 'E'
    {0x00, 0x00, 0x00, 0x3f, 0x30, 0x30, 0x30, 0x3f, 0x30, 0x30, 0x30, 0x30, 0x30, 0x00, 0x00, 0x00},  // 'F'
    {0x00, 0x00, 0x00, 0x0f, 0x19, 0x30, 0x20, 0x20, 0x23, 0x21, 0x31, 0x19, 0x0f, 0x00, 0x00, 0x00},  // 'G'
    {0x00, 0x00, 0x00, 0x21, 0x21, 0x21, 0x21, 0x3f, 0x21, 0x21, 0x21, 0x21, 0x21, 0x00, 0x00, 0x00},  // 'H'
    {0x00, 0x00, 0x00, 0x3f, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x3f, 0x00, 0x00, 0x00},  // 'I'
    {0x00, 0x00, 0x00, 0x1f, 0x03, 0x03, 0x03, 0x03, 0x03, 0x03, 0x03, 0x26, 0x3c, 0x00, 0x00, 0x00},  // 'J'
    {0x00, 0x00, 0x00, 0x21, 0x23, 0x26, 0x2c, 0x3c, 0x34, 0x26, 0x23, 0x21, 0x21, 0x00, 0x00, 0x00},  // 'K'
    {0x00, 0x00, 0x00, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x3f, 0x00, 0x00, 0x00},  // 'L'
    {0x00, 0x00, 0x00, 0x71, 0x73, 0x73, 0x6b, 0x6d, 0x6d, 0x61, 0x61, 0x61, 0x61, 0x00, 0x00, 0x00},  // 'M'
    {0x00, 0x00, 0x00, 0x31, 0x31, 0x39, 0x29, 0x2d, 0x25, 0x27, 0x23, 0x23, 0x23, 0x00, 0x00, 0x00},  // 'N'
    {0x00, 0x00, 0x00, 0x1e, 0x33, 0x31, 0x21, 0x21, 0x21, 0x21, 0x31, 0x33, 0x1e, 0x00, 0x00, 0x00},  // 'O'
    {0x00, 0x00, 0x00, 0x3f, 0x31, 0x31, 0x31, 0x31, 0x3f, 0x30, 0x30, 0x30, 0x30, 0x00, 0x00, 0x00},  // 'P'
    {0x00, 0x00, 0x00, 0x1e, 0x33, 0x31, 0x21, 0x21, 0x21, 0x21, 0x31, 0x33, 0x1e, 0x03, 0x01, 0x00},  // 'Q'
    {0x00, 0x00, 0x00, 0x3e, 0x23, 0x21, 0x21, 0x23, 0x3e, 0x23, 0x21, 0x21, 0x20, 0x00, 0x00, 0x00},  // 'R'
    {0x00, 0x00, 0x00, 0x1e, 0x31, 0x20, 0x30, 0x1c, 0x0f, 0x01, 0x01, 0x23, 0x1e, 0x00, 0x00, 0x00},  // 'S'
    {0x00, 0x00, 0x00, 0x7f, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // 'T'
    {0x00, 0x00, 0x00, 0x31, 0x31, 0x31, 0x31, 0x31, 0x31, 0x31, 0x31, 0x33, 0x1e, 0x00, 0x00, 0x00},  // 'U'
    {0x00, 0x00, 0x00, 0x61, 0x21, 0x31, 0x31, 0x13, 0x13, 0x1a, 0x0e, 0x0e, 0x0c, 0x00, 0x00, 0x00},  // 'V'
    {0x00, 0x00, 0x00, 0x60, 0x60, 0x60, 0x6c, 0x2d, 0x2f, 0x3b, 0x3b, 0x33, 0x33, 0x00, 0x00, 0x00},  // 'W'
    {0x00, 0x00, 0x00, 0x21, 0x31, 0x1b, 0x0e, 0x0c, 0x0e, 0x1a, 0x13, 0x31, 0x61, 0x00, 0x00, 0x00},  // 'X'
    {0x00, 0x00, 0x00, 0x61, 0x31, 0x13, 0x1a, 0x0e, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // 'Y'
    {0x00, 0x00, 0x00, 0x3f, 0x01, 0x03, 0x06, 0x06, 0x0c, 0x08, 0x18, 0x30, 0x3f, 0x00, 0x00, 0x00},  // 'Z'
    {0x00, 0x00, 0x0e, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0e, 0x00, 0x00},  // '['
    {0x00, 0x00, 0x00, 0x20, 0x30, 0x10, 0x18, 0x08, 0x0c, 0x0c, 0x04, 0x06, 0x02, 0x03, 0x01, 0x00},  // 'backslash'
    {0x00, 0x00, 0x1c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x1c, 0x00, 0x00},  // ']'
    {0x00, 0x00, 0x00, 0x0c, 0x1e, 0x13, 0x21, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '^'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7f},  // '_'
    {0x00, 0x18, 0x08, 0x04, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '`'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x33, 0x01, 0x1f, 0x31, 0x21, 0x33, 0x1d, 0x00, 0x00, 0x00},  // 'a'
    {0x00, 0x00, 0x30, 0x30, 0x30, 0x3e, 0x33, 0x31, 0x31, 0x31, 0x31, 0x33, 0x3e, 0x00, 0x00, 0x00},  // 'b'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x0f, 0x19, 0x30, 0x30, 0x30, 0x30, 0x19, 0x0f, 0x00, 0x00, 0x00},  // 'c'
    {0x00, 0x00, 0x01, 0x01, 0x01, 0x1f, 0x33, 0x21, 0x21, 0x21, 0x21, 0x33, 0x1f, 0x00, 0x00, 0x00},  // 'd'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x31, 0x21, 0x3f, 0x20, 0x30, 0x31, 0x1f, 0x00, 0x00, 0x00},  // 'e'
    {0x00, 0x00, 0x07, 0x0c, 0x0c, 0x3f, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x00, 0x00, 0x00},  // 'f'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1f, 0x33, 0x31, 0x21, 0x21, 0x31, 0x33, 0x1f, 0x01, 0x13, 0x1e},  // 'g'
    {0x00, 0x00, 0x30, 0x30, 0x30, 0x3e, 0x33, 0x31, 0x31, 0x31, 0x31, 0x31, 0x31, 0x00, 0x00, 0x00},  // 'h'
    {0x00, 0x00, 0x04, 0x04, 0x00, 0x1c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x3f, 0x00, 0x00, 0x00},  // 'i'
    {0x00, 0x00, 0x04, 0x04, 0x00, 0x1c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x3c},  // 'j'
    {0x00, 0x00, 0x30, 0x30, 0x30, 0x31, 0x32, 0x34, 0x3c, 0x36, 0x33, 0x31, 0x31, 0x00, 0x00, 0x00},  // 'k'
    {0x00, 0x00, 0x3c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x07, 0x00, 0x00, 0x00},  // 'l'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x3f, 0x2d, 0x25, 0x25, 0x25, 0x25, 0x25, 0x25, 0x00, 0x00, 0x00},  // 'm'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x33, 0x31, 0x31, 0x31, 0x31, 0x31, 0x31, 0x00, 0x00, 0x00},  // 'n'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x33, 0x31, 0x21, 0x21, 0x31, 0x33, 0x1e, 0x00, 0x00, 0x00},  // 'o'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x33, 0x31, 0x31, 0x31, 0x31, 0x33, 0x3e, 0x30, 0x30, 0x30},  // 'p'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1f, 0x33, 0x31, 0x21, 0x21, 0x31, 0x33, 0x1f, 0x01, 0x01, 0x01},  // 'q'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1f, 0x1c, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'r'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x11, 0x30, 0x1c, 0x07, 0x01, 0x33, 0x1e, 0x00, 0x00, 0x00},  // 's'
    {0x00, 0x00, 0x00, 0x08, 0x08, 0x3f, 0x08, 0x08, 0x08, 0x08, 0x08, 0x0c, 0x07, 0x00, 0x00, 0x00},  // 't'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x31, 0x31, 0x31, 0x31, 0x31, 0x31, 0x33, 0x1d, 0x00, 0x00, 0x00},  // 'u'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x21, 0x31, 0x33, 0x13, 0x1a, 0x1e, 0x0e, 0x0c, 0x00, 0x00, 0x00},  // 'v'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x40, 0x60, 0x6c, 0x2d, 0x2f, 0x3b, 0x3b, 0x13, 0x00, 0x00, 0x00},  // 'w'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x31, 0x13, 0x1e, 0x0c, 0x0e, 0x1a, 0x33, 0x21, 0x00, 0x00, 0x00},  // 'x'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x21, 0x31, 0x11, 0x13, 0x1a, 0x0e, 0x0e, 0x0c, 0x0c, 0x08, 0x38},  // 'y'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x3f, 0x03, 0x02, 0x04, 0x0c, 0x18, 0x30, 0x3f, 0x00, 0x00, 0x00},  // 'z'
    {0x00, 0x00, 0x07, 0x04, 0x04, 0x0c, 0x0c, 0x0c, 0x38, 0x0c, 0x0c, 0x0c, 0x04, 0x04, 0x07, 0x00},  // '{'
    {0x00, 0x00, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c},  // '|'
    {0x00, 0x00, 0x38, 0x0c, 0x0c, 0x0c, 0x0c, 0x04, 0x07, 0x04, 0x0c, 0x0c, 0x0c, 0x0c, 0x38, 0x00},  // '}'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x07, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '~'
};

}  // namespace bannergen::font_data
