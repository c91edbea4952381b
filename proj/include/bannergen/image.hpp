#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "bannergen/color.hpp"
#include "bannergen/geometry.hpp"

namespace bannergen {

/// 8-bit RGBA raster, row-major, non-premultiplied.
class Image {
public:
    Image() = default;
    Image(int w, int h) : w_(w), h_(h), px_(static_cast<std::size_t>(w) * h * 4, 0) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
    }

    int width() const { return w_; }
    int height() const { return h_; }
    bool empty() const { return px_.empty(); }

    const std::uint8_t* data() const { return px_.data(); }
    std::uint8_t* data() { return px_.data(); }
    std::size_t byte_size() const { return px_.size(); }

    std::uint8_t* pixel(int x, int y) {
        return px_.data() + (static_cast<std::size_t>(y) * w_ + x) * 4;
    }
    const std::uint8_t* pixel(int x, int y) const {
        return px_.data() + (static_cast<std::size_t>(y) * w_ + x) * 4;
    }

    void set(int x, int y, Rgb c, std::uint8_t a = 255) {
        std::uint8_t* p = pixel(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
        p[3] = a;
    }

    Rgb rgb(int x, int y) const {
        const std::uint8_t* p = pixel(x, y);
        return Rgb{p[0], p[1], p[2]};
    }
    std::uint8_t alpha(int x, int y) const { return pixel(x, y)[3]; }

    void fill(Rgb c, std::uint8_t a = 255) {
        for (int y = 0; y < h_; ++y)
            for (int x = 0; x < w_; ++x) set(x, y, c, a);
    }

    bool operator==(const Image& o) const { return w_ == o.w_ && h_ == o.h_ && px_ == o.px_; }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<std::uint8_t> px_;
};

/// Bilinear sample at continuous coordinates (pixel centers at integer+0.5).
/// Out-of-bounds reads clamp to the edge; the alpha channel participates.
inline void bilinear_sample(const Image& img, double fx, double fy, double out[4]) {
    const double gx = fx - 0.5;
    const double gy = fy - 0.5;
    int x0 = static_cast<int>(std::floor(gx));
    int y0 = static_cast<int>(std::floor(gy));
    const double tx = gx - x0;
    const double ty = gy - y0;
    auto at = [&](int x, int y, int c) {
        x = std::clamp(x, 0, img.width() - 1);
        y = std::clamp(y, 0, img.height() - 1);
        return static_cast<double>(img.pixel(x, y)[c]);
    };
    for (int c = 0; c < 4; ++c) {
        const double top = at(x0, y0, c) * (1 - tx) + at(x0 + 1, y0, c) * tx;
        const double bot = at(x0, y0 + 1, c) * (1 - tx) + at(x0 + 1, y0 + 1, c) * tx;
        out[c] = top * (1 - ty) + bot * ty;
    }
}

/// Resample to a new size (bilinear).
inline Image resize_bilinear(const Image& src, int w, int h) {
    Image dst(w, h);
    const double sx = static_cast<double>(src.width()) / w;
    const double sy = static_cast<double>(src.height()) / h;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v[4];
            bilinear_sample(src, (x + 0.5) * sx, (y + 0.5) * sy, v);
            std::uint8_t* p = dst.pixel(x, y);
            for (int c = 0; c < 4; ++c)
                p[c] = static_cast<std::uint8_t>(std::lround(std::clamp(v[c], 0.0, 255.0)));
        }
    }
    return dst;
}

/// Hue-rotate every pixel, alpha preserved.
inline Image hue_rotate_image(const Image& src, double deg) {
    Image dst(src.width(), src.height());
    for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < src.width(); ++x) {
            const std::uint8_t* p = src.pixel(x, y);
            const Rgb r = hue_rotate(Rgb{p[0], p[1], p[2]}, deg);
            dst.set(x, y, r, p[3]);
        }
    }
    return dst;
}

}  // namespace bannergen
