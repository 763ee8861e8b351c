#include "shallow/geom.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shallow {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument: return "invalid-argument";
        case ErrorCode::kDegenerateCollinear: return "degenerate-collinear";
        case ErrorCode::kChordOutsideDisk: return "chord-outside-disk";
        case ErrorCode::kDegenerateTriangle: return "degenerate-triangle";
        case ErrorCode::kCuttingSizeExceeded: return "cutting-size-exceeded";
        case ErrorCode::kNotNEmpty: return "not-N-empty";
        case ErrorCode::kPartitionStalled: return "partition-stalled";
        case ErrorCode::kFamilyMismatch: return "family-mismatch";
        case ErrorCode::kQBelowLine: return "q-below-line";
        case ErrorCode::kMalformedInput: return "malformed-input";
    }
    return "unknown";
}

Line2::Line2(double a, double b, double c) {
    const double n = std::hypot(a, b);
    if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(c)) {
        throw Error(ErrorCode::kInvalidArgument, "line normal must be finite and nonzero");
    }
    a_ = a / n;
    b_ = b / n;
    c_ = c / n;
}

Line2 Line2::through(Point2 p, Point2 q) {
    // left of p->q is positive: normal = perp(q - p)
    const Point2 n = perp(q - p);
    return Line2(n.x, n.y, dot(n, p));
}

namespace {

// cos/sin snapped so axis-parallel canonical orientations are exact.
void snapped_cos_sin(double theta, double& c, double& s) {
    c = std::cos(theta);
    s = std::sin(theta);
    auto snap = [](double& v) {
        if (std::abs(v) < 1e-15) v = 0.0;
        if (std::abs(v - 1.0) < 1e-15) v = 1.0;
        if (std::abs(v + 1.0) < 1e-15) v = -1.0;
    };
    snap(c);
    snap(s);
}

}  // namespace

Line2 Line2::with_direction(Point2 p, double theta) {
    double c = 0.0, s = 0.0;
    snapped_cos_sin(theta, c, s);
    const Point2 n = perp(Point2{c, s});
    return Line2(n.x, n.y, dot(n, p));
}

double Line2::angle() const { return normalize_angle(std::atan2(direction().y, direction().x)); }

Point2 Line2::project(Point2 p) const { return p - signed_dist(p) * normal(); }

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

// ---------------------------------------------------------------------------
// Adaptive orientation predicate: a floating filter, then an exact expansion
// sum of the six cross products when the filter cannot certify the sign.

namespace {

inline void two_product(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    e = (a - av) + (b - bv);
}

// Adds b to the nonoverlapping expansion e (increasing magnitude), in place.
int grow_expansion(double* e, int len, double b) {
    double q = b;
    int out = 0;
    for (int i = 0; i < len; ++i) {
        double s, err;
        two_sum(q, e[i], s, err);
        q = s;
        if (err != 0.0) e[out++] = err;
    }
    if (q != 0.0 || out == 0) e[out++] = q;
    return out;
}

int orient2d_exact(Point2 p, Point2 q, Point2 r) {
    // det = px*qy - px*ry - py*qx + py*rx + qx*ry - qy*rx
    const double terms[6][2] = {{p.x, q.y},  {-p.x, r.y}, {-p.y, q.x},
                                {p.y, r.x},  {q.x, r.y},  {-q.y, r.x}};
    double e[24];
    int len = 0;
    for (const auto& t : terms) {
        double hi, lo;
        two_product(t[0], t[1], hi, lo);
        len = grow_expansion(e, len, lo);
        len = grow_expansion(e, len, hi);
    }
    for (int i = len - 1; i >= 0; --i) {
        if (e[i] > 0.0) return 1;
        if (e[i] < 0.0) return -1;
    }
    return 0;
}

}  // namespace

int orient2d(Point2 p, Point2 q, Point2 r) {
    const double detleft = (p.x - r.x) * (q.y - r.y);
    const double detright = (p.y - r.y) * (q.x - r.x);
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    constexpr double kErrBound = 3.3306690738754716e-16;  // (3 + 16 eps) eps
    if (std::abs(det) > kErrBound * detsum) return det > 0 ? 1 : -1;
    if (detsum == 0.0) return 0;
    return orient2d_exact(p, q, r);
}

Circle2 circumcircle(Point2 p, Point2 q, Point2 r) {
    if (orient2d(p, q, r) == 0) {
        throw Error(ErrorCode::kDegenerateCollinear, "circumcircle of collinear points");
    }
    // Solve relative to p for stability.
    const Point2 b = q - p;
    const Point2 c = r - p;
    const double d = 2.0 * cross(b, c);
    const double bb = dot(b, b);
    const double cc = dot(c, c);
    const Point2 u{(c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d};
    const Point2 center = p + u;
    // Average the three distances; they agree up to rounding.
    const double rad = (dist(center, p) + dist(center, q) + dist(center, r)) / 3.0;
    return {center, rad};
}

std::optional<Point2> line_line_intersect(const Line2& l1, const Line2& l2, double eps) {
    const double det = l1.a() * l2.b() - l1.b() * l2.a();
    if (std::abs(det) <= eps) return std::nullopt;
    return Point2{(l1.c() * l2.b() - l1.b() * l2.c()) / det,
                  (l1.a() * l2.c() - l1.c() * l2.a()) / det};
}

IntersectionPoints line_circle_intersect(const Line2& l, const Circle2& c, const Tolerance& tol) {
    IntersectionPoints out;
    const double s = l.signed_dist(c.center);
    const Point2 foot = c.center - s * l.normal();
    const double disc = c.radius * c.radius - s * s;
    const double scale = std::max(1.0, c.radius * c.radius);
    if (disc < -tol.eps_pred * scale) return out;
    if (disc <= tol.eps_pred * scale) {
        out.push(foot);
        return out;
    }
    const double h = std::sqrt(disc);
    const Point2 d = l.direction();
    out.push(foot - h * d);
    out.push(foot + h * d);
    return out;
}

IntersectionPoints circle_circle_intersect(const Circle2& c1, const Circle2& c2,
                                           const Tolerance& tol) {
    IntersectionPoints out;
    const Point2 dv = c2.center - c1.center;
    const double d = norm(dv);
    if (d <= tol.eps_pred) return out;  // concentric
    const double r1 = c1.radius, r2 = c2.radius;
    // distance from c1 along dv to the radical line
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const double h2 = r1 * r1 - a * a;
    const double scale = std::max(1.0, r1 * r1);
    if (h2 < -tol.eps_pred * scale) return out;
    const Point2 u = (1.0 / d) * dv;
    const Point2 base = c1.center + a * u;
    if (h2 <= tol.eps_pred * scale) {
        out.push(base);
        return out;
    }
    const double h = std::sqrt(h2);
    out.push(base - h * perp(u));
    out.push(base + h * perp(u));
    return out;
}

Box Box::bounding(std::span<const Point2> pts) {
    if (pts.empty()) return kUnitBox;
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point2& p : pts) {
        b.xmin = std::min(b.xmin, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.xmax = std::max(b.xmax, p.x);
        b.ymax = std::max(b.ymax, p.y);
    }
    return b;
}

Rescale Rescale::fit(std::span<const Point2> pts) {
    Rescale rs;
    if (pts.empty()) return rs;
    const Box b = Box::bounding(pts);
    const double extent = std::max(b.width(), b.height());
    rs.offset = {b.xmin, b.ymin};
    rs.scale = extent > 0.0 ? 1.0 / extent : 1.0;
    return rs;
}

Line2 Rescale::line_to_unit(const Line2& l) const {
    // a*x + b*y = c with x = u/scale + ox  ->  a*u + b*v = scale*(c - a*ox - b*oy)
    return Line2(l.a(), l.b(), scale * (l.c() - l.a() * offset.x - l.b() * offset.y));
}

}  // namespace shallow
