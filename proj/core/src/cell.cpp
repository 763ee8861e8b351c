#include "shallow/cell.h"

#include <algorithm>
#include <cmath>

namespace shallow {

double Curve::y_at(double x) const {
    if (kind == Kind::kLine) return line.y_at(x);
    const double dx = std::clamp(x - circle.center.x, -circle.radius, circle.radius);
    const double h = std::sqrt(std::max(0.0, circle.radius * circle.radius - dx * dx));
    return kind == Kind::kUpperArc ? circle.center.y + h : circle.center.y - h;
}

bool Curve::on_half(Point2 p, double eps) const {
    switch (kind) {
        case Kind::kLine: return true;
        case Kind::kUpperArc: return p.y >= circle.center.y - eps;
        case Kind::kLowerArc: return p.y <= circle.center.y + eps;
    }
    return false;
}

ElementaryCell ElementaryCell::from_box(const Box& b, std::uint32_t id) {
    ElementaryCell c;
    c.x_left = b.xmin;
    c.x_right = b.xmax;
    c.bottom = Curve::horizontal(b.ymin);
    c.top = Curve::horizontal(b.ymax);
    c.id = id;
    return c;
}

bool ElementaryCell::contains(Point2 p, double eps) const {
    if (p.x < x_left - eps || p.x > x_right + eps) return false;
    const double x = std::clamp(p.x, x_left, x_right);
    return p.y >= bottom.y_at(x) - eps && p.y <= top.y_at(x) + eps;
}

bool ElementaryCell::contains_strictly(Point2 p, double eps) const {
    if (p.x <= x_left + eps || p.x >= x_right - eps) return false;
    return p.y > bottom.y_at(p.x) + eps && p.y < top.y_at(p.x) - eps;
}

Point2 ElementaryCell::representative_point() const {
    const double x = 0.5 * (x_left + x_right);
    return {x, 0.5 * (bottom.y_at(x) + top.y_at(x))};
}

std::array<Point2, 4> ElementaryCell::corners() const {
    return {Point2{x_left, bottom.y_at(x_left)}, Point2{x_right, bottom.y_at(x_right)},
            Point2{x_right, top.y_at(x_right)}, Point2{x_left, top.y_at(x_left)}};
}

namespace {

// Extreme y of a curve over [xl, xr]: arcs can bulge past their endpoints.
void curve_y_range(const Curve& c, double xl, double xr, double& lo, double& hi) {
    lo = std::min(c.y_at(xl), c.y_at(xr));
    hi = std::max(c.y_at(xl), c.y_at(xr));
    if (c.is_arc() && c.circle.center.x > xl && c.circle.center.x < xr) {
        const double y = c.y_at(c.circle.center.x);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
}

}  // namespace

Box ElementaryCell::bounding_box() const {
    double blo, bhi, tlo, thi;
    curve_y_range(bottom, x_left, x_right, blo, bhi);
    curve_y_range(top, x_left, x_right, tlo, thi);
    return {x_left, std::min(blo, tlo), x_right, std::max(bhi, thi)};
}

double ElementaryCell::area_estimate() const {
    constexpr int kSteps = 16;
    const double w = x_right - x_left;
    double acc = 0.0;
    for (int i = 0; i < kSteps; ++i) {
        const double x = x_left + (i + 0.5) * w / kSteps;
        acc += std::max(0.0, top.y_at(x) - bottom.y_at(x));
    }
    return acc * w / kSteps;
}

ElementaryCell ElementaryCell::trimmed(double xl, double xr) const {
    ElementaryCell c = *this;
    c.x_left = std::max(x_left, xl);
    c.x_right = std::min(x_right, xr);
    if (c.x_right < c.x_left) c.x_right = c.x_left;
    return c;
}

}  // namespace shallow
