#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <zlib.h>

#include "bannergen/image.hpp"

namespace bannergen {

struct PngError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint32_t crc32_of(const std::uint8_t* data, std::size_t n, std::uint32_t seed = 0) {
    return static_cast<std::uint32_t>(::crc32(seed, data, static_cast<uInt>(n)));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t read_u32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

inline void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                         const std::vector<std::uint8_t>& payload) {
    put_u32(out, static_cast<std::uint32_t>(payload.size()));
    std::vector<std::uint8_t> body(type, type + 4);
    body.insert(body.end(), payload.begin(), payload.end());
    out.insert(out.end(), body.begin(), body.end());
    put_u32(out, crc32_of(body.data(), body.size()));
}

inline int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

}  // namespace detail

/// Encode as 8-bit RGBA PNG. Filter None per scanline, fixed zlib level, so
/// encoding is byte-deterministic.
inline std::vector<std::uint8_t> png_encode(const Image& img) {
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(img.height()) * (1 + img.width() * 4));
    for (int y = 0; y < img.height(); ++y) {
        raw.push_back(0);  // filter: none
        raw.insert(raw.end(), img.pixel(0, y), img.pixel(0, y) + img.width() * 4);
    }
    uLongf comp_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> comp(comp_size);
    if (compress2(comp.data(), &comp_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw PngError("zlib compression failed");
    comp.resize(comp_size);

    std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    std::vector<std::uint8_t> ihdr;
    detail::put_u32(ihdr, static_cast<std::uint32_t>(img.width()));
    detail::put_u32(ihdr, static_cast<std::uint32_t>(img.height()));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(6);   // color type RGBA
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // no interlace
    detail::append_chunk(out, "IHDR", ihdr);
    detail::append_chunk(out, "IDAT", comp);
    detail::append_chunk(out, "IEND", {});
    return out;
}

/// Decode 8-bit RGB or RGBA non-interlaced PNG (what this project writes).
inline Image png_decode(const std::uint8_t* data, std::size_t size) {
    static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (size < 8 || std::memcmp(data, sig, 8) != 0) throw PngError("not a PNG file");

    std::size_t pos = 8;
    int w = 0, h = 0, bit_depth = 0, color_type = 0;
    std::vector<std::uint8_t> idat;
    while (pos + 8 <= size) {
        const std::uint32_t len = detail::read_u32(data + pos);
        if (pos + 12 + len > size) throw PngError("truncated chunk");
        const char* type = reinterpret_cast<const char*>(data + pos + 4);
        const std::uint8_t* payload = data + pos + 8;
        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw PngError("bad IHDR");
            w = static_cast<int>(detail::read_u32(payload));
            h = static_cast<int>(detail::read_u32(payload + 4));
            bit_depth = payload[8];
            color_type = payload[9];
            if (payload[12] != 0) throw PngError("interlaced PNG not supported");
            if (bit_depth != 8 || (color_type != 6 && color_type != 2))
                throw PngError("only 8-bit RGB/RGBA supported");
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), payload, payload + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            break;
        }
        pos += 12 + len;
    }
    if (w <= 0 || h <= 0 || idat.empty()) throw PngError("missing image data");

    const int bpp = color_type == 6 ? 4 : 3;
    const std::size_t stride = static_cast<std::size_t>(w) * bpp;
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(h) * (stride + 1));
    uLongf raw_size = static_cast<uLongf>(raw.size());
    if (uncompress(raw.data(), &raw_size, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
        raw_size != raw.size())
        throw PngError("zlib inflate failed");

    Image img(w, h);
    std::vector<std::uint8_t> prev(stride, 0);
    for (int y = 0; y < h; ++y) {
        const std::uint8_t filter = raw[static_cast<std::size_t>(y) * (stride + 1)];
        std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (stride + 1) + 1;
        for (std::size_t i = 0; i < stride; ++i) {
            const int a = i >= static_cast<std::size_t>(bpp) ? row[i - bpp] : 0;
            const int b = prev[i];
            const int c = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
            int v = row[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += detail::paeth(a, b, c); break;
                default: throw PngError("unknown filter type");
            }
            row[i] = static_cast<std::uint8_t>(v & 0xff);
        }
        std::memcpy(prev.data(), row, stride);
        for (int x = 0; x < w; ++x) {
            std::uint8_t* p = img.pixel(x, y);
            p[0] = row[x * bpp];
            p[1] = row[x * bpp + 1];
            p[2] = row[x * bpp + 2];
            p[3] = bpp == 4 ? row[x * bpp + 3] : 255;
        }
    }
    return img;
}

inline Image png_load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw PngError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return png_decode(bytes.data(), bytes.size());
}

inline void png_save(const Image& img, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = png_encode(img);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PngError("cannot write " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

/// CRC-32 of a whole file, used by the fixture manifest.
inline std::uint32_t file_crc32(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::uint32_t crc = detail::crc32_of(nullptr, 0);
    std::array<char, 65536> buf;
    while (f) {
        f.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const std::streamsize n = f.gcount();
        if (n > 0)
            crc = detail::crc32_of(reinterpret_cast<const std::uint8_t*>(buf.data()),
                                   static_cast<std::size_t>(n), crc);
    }
    return crc;
}

}  // namespace bannergen
