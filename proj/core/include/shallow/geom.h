#pragma once

// Planar kernel: points, oriented lines, circles and the predicates the
// rest of the library is built on.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "shallow/error.h"

namespace shallow {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline double dist2(Point2 a, Point2 b) {
    const Point2 d = a - b;
    return d.x * d.x + d.y * d.y;
}
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }  // ccw quarter turn

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Oriented line a*x + b*y = c with (a,b) a unit normal. The positive side
/// is {a*x + b*y > c}; the direction of the line is perp^-1 of the normal, so
/// the positive side lies to the left when walking along direction().
class Line2 {
public:
    Line2() = default;
    /// Normalizes (a,b) to unit length. Throws on a zero normal.
    Line2(double a, double b, double c);

    static Line2 through(Point2 p, Point2 q);          // positive side = left of p->q
    static Line2 with_direction(Point2 p, double theta);  // direction angle theta
    /// Keeps (a,b,c) as given when (a,b) is already unit length; normalizes otherwise.
    static Line2 from_unit(double a, double b, double c) {
        const double n2 = a * a + b * b;
        if (std::abs(n2 - 1.0) <= 1e-12) return raw(a, b, c);
        return Line2(a, b, c);
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    Point2 normal() const { return {a_, b_}; }
    Point2 direction() const { return {b_, -a_}; }
    double angle() const;  // direction angle in [0, 2*pi)

    /// Signed distance; positive on the positive side.
    double signed_dist(Point2 p) const { return a_ * p.x + b_ * p.y - c_; }
    Line2 shifted(double delta) const { return Line2::raw(a_, b_, c_ + delta); }
    Line2 flipped() const { return Line2::raw(-a_, -b_, -c_); }
    Point2 project(Point2 p) const;

    bool is_vertical(double eps = 1e-12) const { return std::abs(b_) <= eps; }
    /// y on the line at abscissa x (non-vertical lines only).
    double y_at(double x) const { return (c_ - a_ * x) / b_; }

    friend bool operator==(const Line2&, const Line2&) = default;

private:
    static Line2 raw(double a, double b, double c) {
        Line2 l;
        l.a_ = a;
        l.b_ = b;
        l.c_ = c;
        return l;
    }
    double a_ = 0.0, b_ = 1.0, c_ = 0.0;
};

struct Circle2 {
    Point2 center;
    double radius = 1.0;

    friend bool operator==(const Circle2&, const Circle2&) = default;
};

struct Tolerance {
    double eps_pred = 1e-12;
    double eps_dist = 1e-9;
};

inline constexpr Tolerance kDefaultTolerance{};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Angle normalized to [0, 2*pi).
double normalize_angle(double theta);

/// Sign of the signed area of pqr, exact for all finite double inputs.
int orient2d(Point2 p, Point2 q, Point2 r);

/// Circle through three non-collinear points.
Circle2 circumcircle(Point2 p, Point2 q, Point2 r);

/// Intersection points of two lines; nullopt when (near) parallel.
std::optional<Point2> line_line_intersect(const Line2& l1, const Line2& l2,
                                          double eps = 1e-14);

struct IntersectionPoints {
    std::array<Point2, 2> pts{};
    int count = 0;

    std::span<const Point2> view() const { return {pts.data(), static_cast<std::size_t>(count)}; }
    void push(Point2 p) { pts[count++] = p; }
};

IntersectionPoints line_circle_intersect(const Line2& l, const Circle2& c,
                                         const Tolerance& tol = kDefaultTolerance);
IntersectionPoints circle_circle_intersect(const Circle2& c1, const Circle2& c2,
                                           const Tolerance& tol = kDefaultTolerance);

/// Axis-aligned box.
struct Box {
    double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diameter() const { return std::hypot(width(), height()); }
    bool contains(Point2 p, double eps = 0.0) const {
        return p.x >= xmin - eps && p.x <= xmax + eps && p.y >= ymin - eps && p.y <= ymax + eps;
    }
    std::array<Point2, 4> corners() const {
        return {Point2{xmin, ymin}, Point2{xmax, ymin}, Point2{xmax, ymax}, Point2{xmin, ymax}};
    }
    static Box bounding(std::span<const Point2> pts);
};

inline constexpr Box kUnitBox{0.0, 0.0, 1.0, 1.0};

/// Isotropic affine map of the input plane onto the unit square (the longer
/// side of the input bounding box maps to [0,1]). Isotropy keeps disks disks.
struct Rescale {
    Point2 offset{0.0, 0.0};
    double scale = 1.0;

    static Rescale fit(std::span<const Point2> pts);

    Point2 to_unit(Point2 p) const { return scale * (p - offset); }
    Point2 from_unit(Point2 p) const { return (1.0 / scale) * p + offset; }
    double length_to_unit(double d) const { return d * scale; }
    double length_from_unit(double d) const { return d / scale; }
    Line2 line_to_unit(const Line2& l) const;
    Circle2 circle_to_unit(const Circle2& c) const {
        return {to_unit(c.center), length_to_unit(c.radius)};
    }
};

}  // namespace shallow
