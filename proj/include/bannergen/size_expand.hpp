#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "bannergen/geometry.hpp"
#include "bannergen/template_model.hpp"

namespace bannergen {

struct GateFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A template stretches well to a target whose diagonal angle differs by at
/// most 30 degrees: |atan(h_t/w_t) - atan(h_0/w_0)| <= 30.
inline bool aspect_gate(double tpl_w, double tpl_h, double target_w, double target_h) {
    if (tpl_w <= 0 || tpl_h <= 0 || target_w <= 0 || target_h <= 0)
        throw std::invalid_argument("dimensions must be positive");
    const double a0 = std::atan2(tpl_h, tpl_w);
    const double a1 = std::atan2(target_h, target_w);
    return rad_to_deg(std::fabs(a1 - a0)) <= 30.0 + 1e-12;
}

namespace detail {

// Affine per-layer map recorded so bound layers can inherit it.
struct LayerMap {
    double scale = 1.0;      // uniform size factor
    double old_cx = 0, old_cy = 0;
    double new_cx = 0, new_cy = 0;

    Rect apply(const Rect& r) const {
        const double w = r.w * scale;
        const double h = r.h * scale;
        const double cx = new_cx + (r.cx() - old_cx) * scale;
        const double cy = new_cy + (r.cy() - old_cy) * scale;
        return Rect{cx - w / 2, cy - h / 2, w, h};
    }
};

}  // namespace detail

/// Topological size expansion. Per layer kind: background stretches to fill;
/// products, logos and text scale uniformly by min(sx, sy) with their centers
/// kept at the same fractional position; trim ornaments re-anchor to their
/// nearest original edge/corner at the scaled edge distance; masks and free
/// ornaments inherit their bound layer's transform. Throws GateFailed when
/// the 30-degree gate rejects the target.
inline Template expand_size(const Template& t, int target_w, int target_h) {
    if (!aspect_gate(t.width, t.height, target_w, target_h))
        throw GateFailed("aspect gate rejects " + std::to_string(t.width) + "x" +
                         std::to_string(t.height) + " -> " + std::to_string(target_w) + "x" +
                         std::to_string(target_h));
    if (target_w == t.width && target_h == t.height) return t;  // exact identity

    const double w0 = t.width, h0 = t.height;
    const double wt = target_w, ht = target_h;
    const double sx = wt / w0;
    const double sy = ht / h0;
    const double s = std::min(sx, sy);

    Template out = t;
    out.width = target_w;
    out.height = target_h;

    std::map<std::string, detail::LayerMap> maps;

    auto uniform_map = [&](const Layer& l) {
        detail::LayerMap m;
        m.scale = s;
        m.old_cx = l.bbox.cx();
        m.old_cy = l.bbox.cy();
        // center at the same fractional position; multiplying by the ratio
        // keeps the identity case bit-exact
        m.new_cx = l.bbox.cx() * sx;
        m.new_cy = l.bbox.cy() * sy;
        return m;
    };

    // first pass: everything except masks / bound free ornaments
    for (Layer& l : out.layers) {
        switch (l.kind) {
            case LayerKind::Background:
                l.bbox = Rect{l.bbox.x * sx, l.bbox.y * sy, l.bbox.w * sx, l.bbox.h * sy};
                break;
            case LayerKind::Product:
            case LayerKind::Logo: {
                const detail::LayerMap m = uniform_map(l);
                maps[l.name] = m;
                l.bbox = m.apply(l.bbox);
                break;
            }
            case LayerKind::TextMain:
            case LayerKind::TextSub:
            case LayerKind::TextAction: {
                const detail::LayerMap m = uniform_map(l);
                maps[l.name] = m;
                l.bbox = m.apply(l.bbox);
                l.font_size *= s;
                break;
            }
            case LayerKind::OrnamentTrim: {
                // preserved edge distance, scaled per axis
                const double dl = l.bbox.x;
                const double dr = w0 - l.bbox.right();
                const double dt = l.bbox.y;
                const double db = h0 - l.bbox.bottom();
                const double w = l.bbox.w * s;
                const double h = l.bbox.h * s;
                const double x = dl <= dr ? dl * sx : wt - dr * sx - w;
                const double y = dt <= db ? dt * sy : ht - db * sy - h;
                l.bbox = Rect{x, y, w, h};
                break;
            }
            default:
                break;  // bound layers handled below
        }
    }
    // second pass: masks and free ornaments follow their bound layer
    for (Layer& l : out.layers) {
        if (!(is_mask(l.kind) || l.kind == LayerKind::OrnamentFree)) continue;
        const auto it = l.bound_to.empty() ? maps.end() : maps.find(l.bound_to);
        if (it != maps.end()) {
            l.bbox = it->second.apply(l.bbox);
        } else {
            // unbound free ornament behaves like a uniformly scaled element
            l.bbox = uniform_map(l).apply(l.bbox);
        }
    }
    // keep everything on the canvas
    const Rect canvas = out.canvas();
    for (Layer& l : out.layers) l.bbox = clamp_into(l.bbox, canvas);
    return out;
}

}  // namespace bannergen
