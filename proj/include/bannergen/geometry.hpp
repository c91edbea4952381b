#pragma once

#include <algorithm>
#include <cmath>

namespace bannergen {

/// Axis-aligned rectangle in canvas coordinates, origin top-left, px.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double area() const { return w > 0 && h > 0 ? w * h : 0.0; }
    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }
    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double aspect() const { return h > 0 ? w / h : 0.0; }

    bool operator==(const Rect&) const = default;
};

inline Rect intersect(const Rect& a, const Rect& b) {
    const double x0 = std::max(a.x, b.x);
    const double y0 = std::max(a.y, b.y);
    const double x1 = std::min(a.right(), b.right());
    const double y1 = std::min(a.bottom(), b.bottom());
    if (x1 <= x0 || y1 <= y0) return Rect{};
    return Rect{x0, y0, x1 - x0, y1 - y0};
}

inline Rect union_rect(const Rect& a, const Rect& b) {
    if (a.area() <= 0) return b;
    if (b.area() <= 0) return a;
    const double x0 = std::min(a.x, b.x);
    const double y0 = std::min(a.y, b.y);
    const double x1 = std::max(a.right(), b.right());
    const double y1 = std::max(a.bottom(), b.bottom());
    return Rect{x0, y0, x1 - x0, y1 - y0};
}

inline double iou(const Rect& a, const Rect& b) {
    const double inter = intersect(a, b).area();
    const double uni = a.area() + b.area() - inter;
    return uni > 0 ? inter / uni : 0.0;
}

inline bool contains(const Rect& outer, const Rect& inner, double tol = 1e-9) {
    return inner.x >= outer.x - tol && inner.y >= outer.y - tol &&
           inner.right() <= outer.right() + tol && inner.bottom() <= outer.bottom() + tol;
}

/// Translate r so it lies inside bounds where possible (no resize).
inline Rect clamp_into(const Rect& r, const Rect& bounds) {
    Rect out = r;
    if (out.w <= bounds.w) {
        out.x = std::clamp(out.x, bounds.x, bounds.right() - out.w);
    } else {
        out.x = bounds.x;
    }
    if (out.h <= bounds.h) {
        out.y = std::clamp(out.y, bounds.y, bounds.bottom() - out.h);
    } else {
        out.y = bounds.y;
    }
    return out;
}

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

}  // namespace bannergen
