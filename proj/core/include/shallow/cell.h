#pragma once

// Elementary cells: vertical pseudo-trapezoids {x_left < x < x_right,
// bottom(x) < y < top(x)} whose bottom and top are a line, or the upper or
// lower half of a circle.

#include <cstdint>

#include "shallow/geom.h"

namespace shallow {

struct Curve {
    enum class Kind : std::uint8_t { kLine, kUpperArc, kLowerArc };

    Kind kind = Kind::kLine;
    Line2 line;      // kLine: non-vertical
    Circle2 circle;  // arcs

    static Curve horizontal(double y) { return {Kind::kLine, Line2(0.0, 1.0, y), {}}; }
    static Curve of_line(const Line2& l) { return {Kind::kLine, l, {}}; }
    static Curve upper_arc(const Circle2& c) { return {Kind::kUpperArc, {}, c}; }
    static Curve lower_arc(const Circle2& c) { return {Kind::kLowerArc, {}, c}; }

    bool is_arc() const { return kind != Kind::kLine; }
    /// y(x); arcs clamp x into the circle's x-extent.
    double y_at(double x) const;
    /// Whether point p (assumed on the supporting line/circle) belongs to this half.
    bool on_half(Point2 p, double eps) const;

    friend bool operator==(const Curve&, const Curve&) = default;
};

struct ElementaryCell {
    double x_left = 0.0;
    double x_right = 1.0;
    Curve bottom = Curve::horizontal(0.0);
    Curve top = Curve::horizontal(1.0);
    std::uint32_t id = 0;

    static ElementaryCell from_box(const Box& b, std::uint32_t id = 0);

    /// Closed-cell membership with slack eps in both coordinates.
    bool contains(Point2 p, double eps = 0.0) const;
    /// Strict interior membership, at least eps inside.
    bool contains_strictly(Point2 p, double eps = 0.0) const;
    Point2 representative_point() const;
    std::array<Point2, 4> corners() const;  // bl, br, tr, tl
    Box bounding_box() const;
    double area_estimate() const;
    /// Same cell restricted to [xl, xr] (intersected with the current span).
    ElementaryCell trimmed(double xl, double xr) const;
};

}  // namespace shallow
