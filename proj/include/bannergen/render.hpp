#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/banner.hpp"
#include "bannergen/color.hpp"
#include "bannergen/font.hpp"
#include "bannergen/image.hpp"
#include "bannergen/recall.hpp"
#include "bannergen/template_model.hpp"

namespace bannergen {

struct MissingAsset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Asset refs resolve against the template-library store; refs with the
/// "element:" prefix resolve against the element-library store instead.
constexpr const char* kElementRefPrefix = "element:";

struct RenderContext {
    const AssetStore* assets = nullptr;
    const AssetStore* element_assets = nullptr;
    const std::vector<ProductInput>* products = nullptr;
    const Palette* palette = nullptr;
};

/// Premultiplied double-precision canvas. Inputs are straight alpha,
/// blending runs premultiplied, output un-premultiplies, so stacking is
/// associative up to the final 8-bit quantization.
class Canvas {
public:
    Canvas(int w, int h) : w_(w), h_(h), px_(std::size_t(w) * h * 4, 0.0) {}

    int width() const { return w_; }
    int height() const { return h_; }

    /// Source-over one straight-alpha sample onto pixel (x, y).
    void blend(int x, int y, double r, double g, double b, double a) {
        if (a <= 0 || x < 0 || y < 0 || x >= w_ || y >= h_) return;
        double* p = px_.data() + (std::size_t(y) * w_ + x) * 4;
        const double ia = 1.0 - a;
        p[0] = r * a + p[0] * ia;
        p[1] = g * a + p[1] * ia;
        p[2] = b * a + p[2] * ia;
        p[3] = a + p[3] * ia;
    }

    /// Composite a straight-alpha 8-bit image aligned at the origin.
    void blend_image(const Image& img) {
        for (int y = 0; y < std::min(h_, img.height()); ++y)
            for (int x = 0; x < std::min(w_, img.width()); ++x) {
                const std::uint8_t* s = img.pixel(x, y);
                blend(x, y, s[0] / 255.0, s[1] / 255.0, s[2] / 255.0, s[3] / 255.0);
            }
    }

    void fill_rect(const Rect& r, Rgb c, double alpha) {
        const int x0 = std::max(0, int(std::floor(r.x)));
        const int y0 = std::max(0, int(std::floor(r.y)));
        const int x1 = std::min(w_, int(std::ceil(r.right())));
        const int y1 = std::min(h_, int(std::ceil(r.bottom())));
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x)
                blend(x, y, c.r / 255.0, c.g / 255.0, c.b / 255.0, alpha);
    }

    /// Stretch src into dst_rect (bilinear), optionally replacing its color
    /// while keeping the alpha channel.
    void draw_stretched(const Image& src, const Rect& dst, double opacity, const Rgb* colorize) {
        const int x0 = std::max(0, int(std::floor(dst.x)));
        const int y0 = std::max(0, int(std::floor(dst.y)));
        const int x1 = std::min(w_, int(std::ceil(dst.right())));
        const int y1 = std::min(h_, int(std::ceil(dst.bottom())));
        if (dst.w <= 0 || dst.h <= 0) return;
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                const double u = (x + 0.5 - dst.x) / dst.w * src.width();
                const double v = (y + 0.5 - dst.y) / dst.h * src.height();
                if (u < 0 || v < 0 || u > src.width() || v > src.height()) continue;
                double s[4];
                bilinear_sample(src, u, v, s);
                const double a = s[3] / 255.0 * opacity;
                if (colorize != nullptr) {
                    blend(x, y, colorize->r / 255.0, colorize->g / 255.0, colorize->b / 255.0, a);
                } else {
                    blend(x, y, s[0] / 255.0, s[1] / 255.0, s[2] / 255.0, a);
                }
            }
        }
    }

    /// Draw src contain-fitted inside dst_rect, rotated about the rect
    /// center. Content shrinks so the rotated extent stays inside the rect.
    void draw_fitted(const Image& src, const Rect& dst, double opacity, double rotation_deg) {
        if (dst.w <= 0 || dst.h <= 0 || src.width() <= 0 || src.height() <= 0) return;
        const double theta = deg_to_rad(rotation_deg);
        const double rot_scale =
            rotation_deg == 0 ? 1.0 : 1.0 / (std::fabs(std::cos(theta)) + std::fabs(std::sin(theta)));
        // contain fit
        const double fit = std::min(dst.w / src.width(), dst.h / src.height()) * rot_scale;
        const double bw = src.width() * fit;
        const double bh = src.height() * fit;
        const double cx = dst.cx(), cy = dst.cy();
        const double cos_t = std::cos(-theta), sin_t = std::sin(-theta);

        const int x0 = std::max(0, int(std::floor(dst.x)));
        const int y0 = std::max(0, int(std::floor(dst.y)));
        const int x1 = std::min(w_, int(std::ceil(dst.right())));
        const int y1 = std::min(h_, int(std::ceil(dst.bottom())));
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                const double dx = x + 0.5 - cx;
                const double dy = y + 0.5 - cy;
                const double ux = cos_t * dx - sin_t * dy;
                const double uy = sin_t * dx + cos_t * dy;
                const double u = (ux + bw / 2.0) / bw * src.width();
                const double v = (uy + bh / 2.0) / bh * src.height();
                if (u < 0 || v < 0 || u > src.width() || v > src.height()) continue;
                double s[4];
                bilinear_sample(src, u, v, s);
                blend(x, y, s[0] / 255.0, s[1] / 255.0, s[2] / 255.0, s[3] / 255.0 * opacity);
            }
        }
    }

    /// Draw one glyph cell with bilinear coverage, clipped to clip_rect.
    void draw_glyph(const std::uint8_t* rows, const Rect& cell, const Rect& clip, Rgb color,
                    double opacity) {
        const int x0 = std::max(0, int(std::floor(std::max(cell.x, clip.x))));
        const int y0 = std::max(0, int(std::floor(std::max(cell.y, clip.y))));
        const int x1 = std::min(w_, int(std::ceil(std::min(cell.right(), clip.right()))));
        const int y1 = std::min(h_, int(std::ceil(std::min(cell.bottom(), clip.bottom()))));
        if (cell.w <= 0 || cell.h <= 0) return;
        auto bit = [&](int gx, int gy) -> double {
            gx = std::clamp(gx, 0, BitmapFont::kCellW - 1);
            gy = std::clamp(gy, 0, BitmapFont::kCellH - 1);
            return (rows[gy] >> (7 - gx)) & 1 ? 1.0 : 0.0;
        };
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                const double gx = (x + 0.5 - cell.x) / cell.w * BitmapFont::kCellW - 0.5;
                const double gy = (y + 0.5 - cell.y) / cell.h * BitmapFont::kCellH - 0.5;
                const int ix = int(std::floor(gx));
                const int iy = int(std::floor(gy));
                const double tx = gx - ix, ty = gy - iy;
                const double cov = bit(ix, iy) * (1 - tx) * (1 - ty) +
                                   bit(ix + 1, iy) * tx * (1 - ty) +
                                   bit(ix, iy + 1) * (1 - tx) * ty + bit(ix + 1, iy + 1) * tx * ty;
                if (cov <= 0) continue;
                blend(x, y, color.r / 255.0, color.g / 255.0, color.b / 255.0, cov * opacity);
            }
        }
    }

    /// Un-premultiply and quantize to 8-bit RGBA.
    Image to_image() const {
        Image out(w_, h_);
        for (int y = 0; y < h_; ++y) {
            for (int x = 0; x < w_; ++x) {
                const double* p = px_.data() + (std::size_t(y) * w_ + x) * 4;
                std::uint8_t* q = out.pixel(x, y);
                const double a = p[3];
                auto chan = [&](double c) {
                    const double straight = a > 0 ? c / a : 0.0;
                    return std::uint8_t(std::lround(std::clamp(straight, 0.0, 1.0) * 255.0));
                };
                q[0] = chan(p[0]);
                q[1] = chan(p[1]);
                q[2] = chan(p[2]);
                q[3] = std::uint8_t(std::lround(std::clamp(a, 0.0, 1.0) * 255.0));
            }
        }
        return out;
    }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<double> px_;
};

struct RenderStats {
    int missing_glyphs = 0;
};

/// Draw one placed layer onto the canvas.
inline void draw_layer(Canvas& canvas, const PlacedLayer& l, const RenderContext& ctx,
                       RenderStats& stats) {
    const Rgb* colorize = nullptr;
    Rgb color_buf{0, 0, 0};
    if (!l.color.empty() && ctx.palette != nullptr && ctx.palette->has(l.color)) {
        color_buf = ctx.palette->anchor(l.color);
        colorize = &color_buf;
    }

    if (l.product_index >= 0) {
        if (ctx.products == nullptr || l.product_index >= int(ctx.products->size()))
            throw MissingAsset("product index " + std::to_string(l.product_index) +
                               " out of range");
        canvas.draw_fitted((*ctx.products)[std::size_t(l.product_index)].image, l.bbox,
                           l.opacity, l.rotation_deg);
        return;
    }
    if (is_text(l.kind)) {
        const TextLineLayout line = layout_text_line(l.text, l.bbox, l.font_size);
        stats.missing_glyphs += line.missing_glyphs;
        const Rgb color = colorize != nullptr ? color_buf : Rgb{0, 0, 0};
        for (const GlyphPlacement& g : line.glyphs) {
            if (is_space_cp(g.codepoint)) continue;
            canvas.draw_glyph(BitmapFont::glyph(g.codepoint), g.bbox, l.bbox, color, l.opacity);
        }
        return;
    }
    if (!l.asset_ref.empty()) {
        std::string ref = l.asset_ref;
        const AssetStore* store = ctx.assets;
        if (ref.rfind(kElementRefPrefix, 0) == 0) {
            ref = ref.substr(std::string(kElementRefPrefix).size());
            store = ctx.element_assets;
        }
        if (store == nullptr) throw MissingAsset(l.asset_ref);
        std::shared_ptr<const Image> img;
        try {
            img = store->get(ref);
        } catch (const std::exception& e) {
            throw MissingAsset(l.asset_ref + ": " + e.what());
        }
        // background tint comes from the declared color only when no raster
        canvas.draw_stretched(*img, l.bbox, l.opacity,
                              l.kind == LayerKind::Background ? nullptr : colorize);
        return;
    }
    if (colorize != nullptr) canvas.fill_rect(l.bbox, color_buf, l.opacity);
}

/// Render a fully adjusted banner: layers bottom to top, source-over.
inline Image composite(const CandidateBanner& banner, const RenderContext& ctx,
                       RenderStats* stats_out = nullptr) {
    Canvas canvas(banner.width, banner.height);
    RenderStats stats;
    for (const PlacedLayer& l : banner.layers) draw_layer(canvas, l, ctx, stats);
    if (stats_out != nullptr) *stats_out = stats;
    return canvas.to_image();
}

}  // namespace bannergen
