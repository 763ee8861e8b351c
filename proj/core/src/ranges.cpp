#include "shallow/ranges.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shallow {

FatTriangle FatTriangle::make(Point2 a, Point2 b, Point2 c, double alpha) {
    const int o = orient2d(a, b, c);
    if (o == 0) throw Error(ErrorCode::kDegenerateTriangle, "collinear triangle vertices");
    FatTriangle t;
    t.v = o > 0 ? std::array<Point2, 3>{a, b, c} : std::array<Point2, 3>{a, c, b};
    t.alpha = alpha;
    return t;
}

// --- ConvexShape -----------------------------------------------------------

ConvexShape ConvexShape::inflated(double delta) const {
    ConvexShape s;
    for (const Line2& l : halfplanes()) s.add(l.shifted(-delta));
    if (disk) s.disk = Circle2{disk->center, disk->radius + delta};
    return s;
}

bool ConvexShape::contains(Point2 p, double eps) const {
    for (const Line2& l : halfplanes()) {
        if (l.signed_dist(p) < -eps) return false;
    }
    if (disk) {
        if (disk->radius < 0.0) return false;
        const double r = disk->radius + eps;
        if (dist2(p, disk->center) > r * r) return false;
    }
    return true;
}

double ConvexShape::depth(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Line2& l : halfplanes()) d = std::min(d, l.signed_dist(p));
    if (disk) d = std::min(d, disk->radius - dist(p, disk->center));
    return d;
}

namespace {

using Polygon = std::vector<Point2>;

Polygon clip_polygon(const Polygon& poly, const Line2& l) {
    Polygon out;
    const std::size_t n = poly.size();
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % n];
        const double da = l.signed_dist(a);
        const double db = l.signed_dist(b);
        if (da >= 0.0) out.push_back(a);
        if ((da >= 0.0) != (db >= 0.0)) {
            const double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

Polygon shape_polygon(const ConvexShape& s) {
    Polygon poly;
    if (s.disk) {
        constexpr int kSides = 64;
        // circumscribed polygon: contains the disk
        const double r = s.disk->radius / std::cos(kPi / kSides);
        for (int i = 0; i < kSides; ++i) {
            const double t = kTwoPi * i / kSides;
            poly.push_back(s.disk->center + r * Point2{std::cos(t), std::sin(t)});
        }
    } else {
        constexpr double kBig = 1e4;
        poly = {{-kBig, -kBig}, {kBig, -kBig}, {kBig, kBig}, {-kBig, kBig}};
    }
    for (const Line2& l : s.halfplanes()) {
        poly = clip_polygon(poly, l);
        if (poly.empty()) break;
    }
    return poly;
}

}  // namespace

std::optional<Point2> ConvexShape::interior_point() const {
    if (disk) {
        if (disk->radius < 0.0) return std::nullopt;
        if (contains(disk->center)) return disk->center;
        if (line_count == 1) {
            const Line2& l = lines[0];
            const double s = l.signed_dist(disk->center);
            const double lo = std::max(-s, -disk->radius);
            if (lo > disk->radius) return std::nullopt;
            return disk->center + (0.5 * (lo + disk->radius)) * l.normal();
        }
    }
    const Polygon poly = shape_polygon(*this);
    if (poly.empty()) return std::nullopt;
    Point2 c{0.0, 0.0};
    for (const Point2& p : poly) c = c + p;
    c = (1.0 / static_cast<double>(poly.size())) * c;
    if (!contains(c, 1e-12)) return std::nullopt;
    return c;
}

Box ConvexShape::bounding_box(const Box& fallback) const {
    const Polygon poly = shape_polygon(*this);
    if (poly.empty()) return {0.0, 0.0, -1.0, -1.0};
    Box b = Box::bounding(poly);
    if (!disk) {
        b.xmin = std::max(b.xmin, fallback.xmin - 1.0);
        b.ymin = std::max(b.ymin, fallback.ymin - 1.0);
        b.xmax = std::min(b.xmax, fallback.xmax + 1.0);
        b.ymax = std::min(b.ymax, fallback.ymax + 1.0);
    }
    return b;
}

namespace {

void add_box(ConvexShape& s, const Box& b) {
    s.add(Line2(1.0, 0.0, b.xmin));
    s.add(Line2(-1.0, 0.0, -b.xmax));
    s.add(Line2(0.0, 1.0, b.ymin));
    s.add(Line2(0.0, -1.0, -b.ymax));
}

}  // namespace

ConvexShape to_shape(const Range& r) {
    ConvexShape s;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FatTriangle>) {
                for (int i = 0; i < 3; ++i) s.add(Line2::through(g.v[i], g.v[(i + 1) % 3]));
            } else if constexpr (std::is_same_v<T, CircularCap>) {
                s.add(g.chord);
                s.disk = g.disk;
            } else if constexpr (std::is_same_v<T, Disk>) {
                s.disk = g.circle;
            } else if constexpr (std::is_same_v<T, Halfplane>) {
                s.add(g.line);
            } else {
                for (const Line2& l : g.sides) s.add(l);
                add_box(s, g.clip);
            }
        },
        r);
    return s;
}

std::string range_type_name(const Range& r) {
    switch (r.index()) {
        case 0: return "fat_triangle";
        case 1: return "cap";
        case 2: return "disk";
        case 3: return "halfplane";
        default: return "clipped_wedge";
    }
}

bool contains_point(const Range& r, Point2 p) {
    return std::visit(
        [&](const auto& g) -> bool {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FatTriangle>) {
                return orient2d(g.v[0], g.v[1], p) >= 0 && orient2d(g.v[1], g.v[2], p) >= 0 &&
                       orient2d(g.v[2], g.v[0], p) >= 0;
            } else if constexpr (std::is_same_v<T, CircularCap>) {
                return dist2(p, g.disk.center) <= g.disk.radius * g.disk.radius &&
                       g.chord.signed_dist(p) >= 0.0;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return dist2(p, g.circle.center) <= g.circle.radius * g.circle.radius;
            } else if constexpr (std::is_same_v<T, Halfplane>) {
                return g.line.signed_dist(p) >= 0.0;
            } else {
                if (!g.clip.contains(p)) return false;
                for (const Line2& l : g.sides) {
                    if (l.signed_dist(p) < 0.0) return false;
                }
                return true;
            }
        },
        r);
}

bool contains_point_strictly(const Range& r, Point2 p, double eps) {
    return to_shape(r).depth(p) > eps;
}

double central_angle(const CircularCap& c, const Tolerance& tol) {
    const double s = c.chord.signed_dist(c.disk.center);
    const double rho = c.disk.radius;
    if (std::abs(s) > rho + tol.eps_dist) {
        throw Error(ErrorCode::kChordOutsideDisk, "chord line misses the disk");
    }
    return 2.0 * std::acos(std::clamp(-s / rho, -1.0, 1.0));
}

double min_interior_angle(Point2 a, Point2 b, Point2 c) {
    if (orient2d(a, b, c) == 0) throw Error(ErrorCode::kDegenerateTriangle, "collinear triangle");
    auto angle_at = [](Point2 p, Point2 q, Point2 r) {
        const Point2 u = q - p;
        const Point2 v = r - p;
        return std::abs(std::atan2(cross(u, v), dot(u, v)));
    };
    return std::min({angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)});
}

double min_interior_angle(const FatTriangle& t) { return min_interior_angle(t.v[0], t.v[1], t.v[2]); }

Box range_bounding_box(const Range& r, const Box& world) {
    return std::visit(
        [&](const auto& g) -> Box {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FatTriangle>) {
                return Box::bounding(g.v);
            } else if constexpr (std::is_same_v<T, CircularCap>) {
                return ConvexShape{to_shape(Range{g})}.bounding_box(world);
            } else if constexpr (std::is_same_v<T, Disk>) {
                const auto& c = g.circle;
                return {c.center.x - c.radius, c.center.y - c.radius, c.center.x + c.radius,
                        c.center.y + c.radius};
            } else if constexpr (std::is_same_v<T, Halfplane>) {
                return to_shape(Range{g}).bounding_box(world);
            } else {
                return to_shape(Range{g}).bounding_box(world);
            }
        },
        r);
}

// --- cell classification -----------------------------------------------------

namespace {

// min of l.signed_dist over the closed cell
double min_linear_over_cell(const ElementaryCell& cell, const Line2& l) {
    double m = std::numeric_limits<double>::infinity();
    for (const Point2& p : cell.corners()) m = std::min(m, l.signed_dist(p));
    for (const Curve* c : {&cell.bottom, &cell.top}) {
        if (!c->is_arc()) continue;
        const Point2 z = c->circle.center - c->circle.radius * l.normal();
        if (z.x >= cell.x_left && z.x <= cell.x_right && c->on_half(z, 0.0)) {
            m = std::min(m, l.signed_dist(z));
        }
    }
    return m;
}

double max_dist_over_cell(const ElementaryCell& cell, Point2 q) {
    double m = 0.0;
    for (const Point2& p : cell.corners()) m = std::max(m, dist(p, q));
    for (const Curve* c : {&cell.bottom, &cell.top}) {
        if (!c->is_arc()) continue;
        const Point2 d = c->circle.center - q;
        const double n = norm(d);
        if (n <= 0.0) continue;
        const Point2 z = c->circle.center + (c->circle.radius / n) * d;
        if (z.x >= cell.x_left && z.x <= cell.x_right && c->on_half(z, 0.0)) {
            m = std::max(m, dist(z, q));
        }
    }
    return m;
}

struct Piece {
    bool vertical = false;
    double x0 = 0.0, x1 = 0.0;  // x-span (equal for walls)
    double y0 = 0.0, y1 = 0.0;  // wall y-span
    const Curve* curve = nullptr;
};

template <typename F>
bool any_piece_boundary_point(const Piece& pc, const Line2* line, const Circle2* circ, double eps,
                              F&& accept) {
    if (pc.vertical) {
        const double x = pc.x0;
        if (line) {
            if (line->is_vertical()) return false;
            const double y = line->y_at(x);
            if (y >= pc.y0 - eps && y <= pc.y1 + eps) return accept(Point2{x, y});
            return false;
        }
        const double dx = x - circ->center.x;
        const double h2 = circ->radius * circ->radius - dx * dx;
        if (h2 < -eps) return false;
        const double h = std::sqrt(std::max(0.0, h2));
        for (double y : {circ->center.y - h, circ->center.y + h}) {
            if (y >= pc.y0 - eps && y <= pc.y1 + eps && accept(Point2{x, y})) return true;
        }
        return false;
    }
    const Curve& c = *pc.curve;
    IntersectionPoints pts;
    if (c.kind == Curve::Kind::kLine) {
        if (line) {
            if (auto p = line_line_intersect(c.line, *line)) pts.push(*p);
        } else {
            pts = line_circle_intersect(c.line, *circ);
        }
    } else {
        if (line) {
            pts = line_circle_intersect(*line, c.circle);
        } else {
            pts = circle_circle_intersect(c.circle, *circ);
        }
    }
    for (const Point2& p : pts.view()) {
        if (p.x < pc.x0 - eps || p.x > pc.x1 + eps) continue;
        if (!c.on_half(p, eps)) continue;
        if (accept(p)) return true;
    }
    return false;
}

bool shape_meets_cell(const ConvexShape& s, const std::optional<Point2>& ip,
                      const ElementaryCell& cell, double eps) {
    if (!ip) return false;
    if (cell.contains(*ip, eps)) return true;
    const auto corners = cell.corners();
    for (const Point2& p : corners) {
        if (s.contains(p, eps)) return true;
    }
    const Piece pieces[4] = {
        {true, cell.x_left, cell.x_left, std::min(corners[0].y, corners[3].y),
         std::max(corners[0].y, corners[3].y), nullptr},
        {true, cell.x_right, cell.x_right, std::min(corners[1].y, corners[2].y),
         std::max(corners[1].y, corners[2].y), nullptr},
        {false, cell.x_left, cell.x_right, 0.0, 0.0, &cell.bottom},
        {false, cell.x_left, cell.x_right, 0.0, 0.0, &cell.top},
    };
    auto accept = [&](Point2 p) { return s.contains(p, eps); };
    for (const Piece& pc : pieces) {
        for (const Line2& l : s.halfplanes()) {
            if (any_piece_boundary_point(pc, &l, nullptr, eps, accept)) return true;
        }
        if (s.disk && any_piece_boundary_point(pc, nullptr, &*s.disk, eps, accept)) return true;
    }
    return false;
}

bool shape_contains_cell(const ConvexShape& s, const ElementaryCell& cell, double margin) {
    for (const Line2& l : s.halfplanes()) {
        if (min_linear_over_cell(cell, l) < margin) return false;
    }
    if (s.disk) {
        if (s.disk->radius - max_dist_over_cell(cell, s.disk->center) < margin) return false;
    }
    return true;
}

}  // namespace

PreparedShape::PreparedShape(const ConvexShape& s, const Tolerance& t) : shape(s), tol(t) {
    for (int k = 0; k < 2; ++k) {
        const double delta = k == 0 ? tol.eps_dist : -tol.eps_dist;
        probe[k] = s.inflated(delta);
        probe_point[k] = probe[k].interior_point();
        probe_box[k] = probe_point[k] ? probe[k].bounding_box(Box{-1e3, -1e3, 1e3, 1e3})
                                      : Box{0.0, 0.0, -1.0, -1.0};
    }
}

CellRelation PreparedShape::relate(const ElementaryCell& cell, Semantics sem) const {
    const int k = sem == Semantics::kClosed ? 0 : 1;
    if (!probe_point[k]) return CellRelation::kDisjoint;
    const Box cb = cell.bounding_box();
    const Box& pb = probe_box[k];
    const double e = tol.eps_pred;
    if (pb.xmax < cb.xmin - e || pb.xmin > cb.xmax + e || pb.ymax < cb.ymin - e ||
        pb.ymin > cb.ymax + e) {
        return CellRelation::kDisjoint;
    }
    const double contain_margin = k == 0 ? tol.eps_dist : -tol.eps_dist;
    if (shape_contains_cell(shape, cell, contain_margin)) return CellRelation::kContains;
    if (!shape_meets_cell(probe[k], probe_point[k], cell, e)) return CellRelation::kDisjoint;
    return CellRelation::kCrosses;
}

CellRelation relate_cell(const ConvexShape& s, const ElementaryCell& cell, Semantics sem,
                         const Tolerance& tol) {
    return PreparedShape(s, tol).relate(cell, sem);
}

CellRelation relate_cell(const Range& r, const ElementaryCell& cell, Semantics sem,
                         const Tolerance& tol) {
    return relate_cell(to_shape(r), cell, sem, tol);
}

}  // namespace shallow
