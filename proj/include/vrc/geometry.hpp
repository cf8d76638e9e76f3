#pragma once

#include <cmath>

namespace vrc {

// Image-space coordinates: top-left origin, x rightward, y downward, pixels.
struct Point {
    double x = 0.0;
    double y = 0.0;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

// Corner-form box [x1,y1,x2,y2] with x1 <= x2 and y1 <= y2.
struct BBox {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    double width() const { return x2 - x1; }
    double height() const { return y2 - y1; }
    double area() const { return width() * height(); }

    bool valid() const {
        return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
               std::isfinite(y2) && x1 <= x2 && y1 <= y2;
    }
};

inline Point center_of(const BBox& b) {
    return Point{(b.x1 + b.x2) / 2.0, (b.y1 + b.y2) / 2.0};
}

// Inclusive point-in-box predicate.
inline bool contains(const Point& p, const BBox& b) {
    return b.x1 <= p.x && p.x <= b.x2 && b.y1 <= p.y && p.y <= b.y2;
}

inline double intersection_area(const BBox& a, const BBox& b) {
    double w = std::fmin(a.x2, b.x2) - std::fmax(a.x1, b.x1);
    double h = std::fmin(a.y2, b.y2) - std::fmax(a.y1, b.y1);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

inline double iou(const BBox& a, const BBox& b) {
    double inter = intersection_area(a, b);
    if (inter <= 0.0) return 0.0;
    double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

// Wire locations carry one decimal; keep serialization consistent with that.
inline double round1(double v) { return std::round(v * 10.0) / 10.0; }

} // namespace vrc
