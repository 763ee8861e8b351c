#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "shallow/canonize.h"

namespace shallow {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;
constexpr double kOnEps = 1e-12;
constexpr double kInsideEps = 1e-9;

struct Side {
    Line2 line;
    bool free = false;
    std::uint32_t p = kNone, q = kNone;  // anchors; q set for two-point sides
    double theta = -1.0;                 // canonical orientation, or -1
    bool flipped = false;                // two-point side opposite to through(N[p], N[q])
};

bool is_flipped(std::span<const Point2> N, std::uint32_t i, std::uint32_t j, const Line2& l) {
    return dot(Line2::through(N[i], N[j]).normal(), l.normal()) < 0.0;
}

using Tri = std::array<Side, 3>;

double mod_pi(double a) {
    double t = std::fmod(a, kPi);
    if (t < 0) t += kPi;
    if (t >= kPi - 1e-15) t = 0.0;
    return t;
}

// Translates side i away from the opposite vertex until it meets a point of
// N in the open wedge of the other two sides.
void expand_side(Tri& t, int i, std::span<const Point2> N, const Box& bbox) {
    const Line2& a = t[(i + 1) % 3].line;
    const Line2& b = t[(i + 2) % 3].line;
    Line2& l = t[i].line;
    double best = -std::numeric_limits<double>::infinity();
    std::uint32_t hit = kNone;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        const Point2 p = N[k];
        if (a.signed_dist(p) <= kOnEps || b.signed_dist(p) <= kOnEps) continue;
        const double s = l.signed_dist(p);
        if (s > kOnEps) continue;  // inside already (reporting mode)
        if (s > best) {
            best = s;
            hit = k;
        }
    }
    if (hit != kNone) {
        l = l.shifted(std::min(0.0, l.signed_dist(N[hit])));
        t[i].p = hit;
        t[i].free = false;
        return;
    }
    double lo = 0.0;
    for (Point2 c : bbox.corners()) lo = std::min(lo, l.signed_dist(c));
    l = l.shifted(lo - std::max(1.0, bbox.diameter()));
    t[i].free = true;
}

// Rotates side i about its anchor, counterclockwise (dir = +1) or clockwise,
// until it reaches a canonical orientation or meets another point of N.
Side rotate_side(const Tri& t, int i, int dir, std::span<const Point2> N, const OrientationSet& D) {
    const Side& s = t[i];
    const Line2& a = t[(i + 1) % 3].line;
    const Line2& b = t[(i + 2) % 3].line;
    const Point2 q = N[s.p];
    const Point2 d = s.line.direction();
    const Point2 n = s.line.normal();
    const double theta = s.line.angle();
    const double target = dir > 0 ? D.next_at_or_after(theta) : D.prev_at_or_before(theta);
    const double phi_d = std::abs(target - theta);

    double phi_hit = std::numeric_limits<double>::infinity();
    std::uint32_t hit = kNone;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        if (k == s.p || N[k] == q) continue;
        const Point2 p = N[k];
        if (a.signed_dist(p) <= kOnEps || b.signed_dist(p) <= kOnEps) continue;
        const Point2 u = p - q;
        double phi;
        if (std::abs(cross(d, u)) <= kOnEps * std::max(1.0, norm(u))) {
            phi = 0.0;
        } else {
            const double raw = std::atan2(dot(n, u), dot(d, u));
            phi = mod_pi(dir > 0 ? raw : -raw);
        }
        if (phi < phi_hit) {
            phi_hit = phi;
            hit = k;
        }
    }
    Side out = s;
    out.free = false;
    if (hit != kNone && phi_hit <= phi_d + 1e-15) {
        const double rot = theta + dir * phi_hit;
        const Point2 dr{std::cos(rot), std::sin(rot)};
        Line2 l = Line2::through(q, N[hit]);
        if (dot(l.direction(), dr) < 0) l = l.flipped();
        out.line = l;
        out.p = std::min(s.p, hit);
        out.q = std::max(s.p, hit);
        out.theta = -1.0;
        out.flipped = is_flipped(N, out.p, out.q, l);
    } else {
        out.line = Line2::with_direction(q, target);
        out.q = kNone;
        out.theta = normalize_angle(target);
        if (out.theta > kTwoPi - 1e-12) out.theta = 0.0;
    }
    return out;
}

void side_tokens(const Side& s, std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& tok) {
    if (s.free) return;
    if (s.q != kNone) tok.emplace_back(s.p, s.q, s.flipped ? -3.0 : -1.0);
    else if (s.theta >= 0.0) tok.emplace_back(s.p, kNone, s.theta);
    else tok.emplace_back(s.p, kNone, -2.0);  // single anchor, not yet canonical
}

Provenance make_provenance(const char* kind, const std::vector<const Side*>& sides) {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> tok;
    for (const Side* s : sides) side_tokens(*s, tok);
    std::sort(tok.begin(), tok.end());
    Provenance pv;
    pv.kind = kind;
    for (const auto& [i, j, th] : tok) {
        pv.points.push_back(i);
        pv.points.push_back(j);
        pv.thetas.push_back(th);
    }
    return pv;
}

// Range of three lines: a triangle when bounded, else the clipped wedge.
void emit(const Tri& t, double alpha, const Box& bbox, Covering& out) {
    std::vector<Line2> anchored;
    std::vector<const Side*> sides;
    for (const Side& s : t) {
        sides.push_back(&s);
        if (!s.free) anchored.push_back(s.line);
    }
    Range r;
    const char* kind = "wedge";
    bool is_triangle = false;
    if (anchored.size() == 3) {
        std::array<Point2, 3> v;
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
            const auto p = line_line_intersect(t[(k + 1) % 3].line, t[(k + 2) % 3].line);
            if (!p) ok = false;
            else v[k] = *p;
        }
        // Vertex k must lie on the positive side of side k.
        for (int k = 0; k < 3 && ok; ++k)
            if (!(t[k].line.signed_dist(v[k]) > 0.0)) ok = false;
        if (ok && orient2d(v[0], v[1], v[2]) != 0) {
            r = FatTriangle::make(v[0], v[1], v[2], alpha / 2);
            kind = "triangle";
            is_triangle = true;
        }
    }
    if (!is_triangle) r = ClippedWedge{anchored, bbox};
    Provenance pv = make_provenance(kind, sides);
    for (const Provenance& e : out.provenance)
        if (e == pv) return;
    out.ranges.push_back(std::move(r));
    out.provenance.push_back(std::move(pv));
}

}  // namespace

Covering cover_triangle(const FatTriangle& tri, std::span<const Point2> N, const OrientationSet& D,
                        const Box& bbox, CoverMode mode) {
    if (mode == CoverMode::kEmptiness && !openly_empty(tri, N, kInsideEps))
        throw Error(ErrorCode::kNotNEmpty, "triangle contains a net point");
    Tri t;
    for (int k = 0; k < 3; ++k) t[k].line = Line2::through(tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]);
    for (int k = 0; k < 3; ++k) expand_side(t, k, N, bbox);

    std::vector<Tri> cur{t};
    for (int k = 0; k < 3; ++k) {
        if (t[k].free) continue;
        std::vector<Tri> next;
        for (const Tri& x : cur) {
            for (int dir : {+1, -1}) {
                Tri y = x;
                y[k] = rotate_side(x, k, dir, N, D);
                next.push_back(y);
            }
        }
        cur = std::move(next);
    }
    Covering out;
    for (const Tri& x : cur) emit(x, tri.alpha, bbox, out);
    return out;
}

TestSet enumerate_canonical_triangles(std::span<const Point2> N, double alpha,
                                      const OrientationSet& D, const Box& bbox,
                                      const EnumerationOptions& opt) {
    TestSet ts;
    ts.family = Family::kTriangles;
    ts.mode = opt.mode;
    ts.alpha = alpha;
    ts.bbox = bbox;
    ts.net_points.assign(N.begin(), N.end());
    auto acceptable = [&](const Range& r) {
        if (opt.mode == CoverMode::kEmptiness) return openly_empty(r, N, kInsideEps);
        return count_inside(r, N, kInsideEps) <= opt.shallow_limit;
    };
    auto side_of = [&](const CanonicalLine& c, const Line2& l) {
        Side s;
        s.line = l;
        s.p = c.i;
        if (c.kind == CanonicalLine::Kind::kTwoPoints) {
            s.q = c.j;
            s.flipped = is_flipped(N, c.i, c.j, l);
        }
        else s.theta = c.theta >= kTwoPi - 1e-12 ? 0.0 : c.theta;
        return s;
    };
    const double tol = 1e-9;
    auto on_segment = [&](Point2 p, Point2 a, Point2 b) {
        const Point2 ab = b - a;
        const double len2 = dot(ab, ab);
        if (len2 <= 0.0) return dist(p, a) <= tol;
        const double t = dot(p - a, ab) / len2;
        return t >= -tol && t <= 1 + tol;
    };

    if (N.empty()) {
        ts.ranges.push_back(ClippedWedge{{}, bbox});
        ts.provenance.push_back({"bbox", {}, {}});
        ts.enumerated = 1;
        return ts;
    }
    const std::vector<CanonicalLine> all = canonical_lines(N, D);
    // Undirected lines for triangles: orientations folded into [0, pi).
    std::vector<CanonicalLine> undirected;
    for (const CanonicalLine& c : all)
        if (c.kind == CanonicalLine::Kind::kTwoPoints || c.theta < kPi - 1e-12) undirected.push_back(c);
    std::vector<double> dir(undirected.size());
    for (std::size_t k = 0; k < undirected.size(); ++k) dir[k] = mod_pi(undirected[k].line.angle());

    auto fat_dirs = [&](double a, double b, double c) {
        double v[3] = {a, b, c};
        std::sort(v, v + 3);
        const double m = std::min({v[1] - v[0], v[2] - v[1], kPi - (v[2] - v[0])});
        return m >= alpha / 2 - 1e-12;
    };

    const std::size_t L = undirected.size();
    for (std::size_t a = 0; a < L; ++a) {
        for (std::size_t b = a + 1; b < L; ++b) {
            for (std::size_t c = b + 1; c < L; ++c) {
                if (!fat_dirs(dir[a], dir[b], dir[c])) continue;
                const CanonicalLine* cl[3] = {&undirected[a], &undirected[b], &undirected[c]};
                std::array<Point2, 3> v;
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k) {
                    const auto p = line_line_intersect(cl[(k + 1) % 3]->line, cl[(k + 2) % 3]->line);
                    if (!p) ok = false;
                    else v[k] = *p;
                }
                if (!ok || orient2d(v[0], v[1], v[2]) == 0) continue;
                if (std::min({dist(v[0], v[1]), dist(v[1], v[2]), dist(v[2], v[0])}) <= tol) continue;
                // Anchors on their own closed edges.
                for (int k = 0; k < 3 && ok; ++k) {
                    const Point2 e0 = v[(k + 1) % 3], e1 = v[(k + 2) % 3];
                    if (!on_segment(N[cl[k]->i], e0, e1)) ok = false;
                    if (cl[k]->kind == CanonicalLine::Kind::kTwoPoints && !on_segment(N[cl[k]->j], e0, e1))
                        ok = false;
                }
                if (!ok) continue;
                const FatTriangle t = FatTriangle::make(v[0], v[1], v[2], alpha / 2);
                if (!acceptable(t)) continue;
                Tri sides;
                for (int k = 0; k < 3; ++k) {
                    Line2 l = cl[k]->line;
                    if (l.signed_dist(v[k]) < 0) l = l.flipped();
                    sides[k] = side_of(*cl[k], l);
                }
                ts.ranges.push_back(t);
                ts.provenance.push_back(make_provenance("triangle", {&sides[0], &sides[1], &sides[2]}));
            }
        }
    }

    // Unbounded variants: oriented halfplanes and wedges, clipped to bbox.
    std::vector<std::pair<const CanonicalLine*, Line2>> oriented;
    for (const CanonicalLine& c : all) {
        oriented.emplace_back(&c, c.line);
        if (c.kind == CanonicalLine::Kind::kTwoPoints) oriented.emplace_back(&c, c.line.flipped());
    }
    for (std::size_t a = 0; a < oriented.size(); ++a) {
        const Side sa = side_of(*oriented[a].first, oriented[a].second);
        const Range h = ClippedWedge{{sa.line}, bbox};
        if (acceptable(h)) {
            ts.ranges.push_back(h);
            ts.provenance.push_back(make_provenance("wedge", {&sa}));
        }
        for (std::size_t b = a + 1; b < oriented.size(); ++b) {
            const Line2& la = oriented[a].second;
            const Line2& lb = oriented[b].second;
            // Interior angle of the wedge la+ ∩ lb+ is pi minus the angle between normals.
            const double cosn = std::clamp(dot(la.normal(), lb.normal()), -1.0, 1.0);
            const double wedge = kPi - std::acos(cosn);
            if (wedge < alpha / 2 - 1e-12 || wedge > kPi - 1e-12) continue;
            const auto apex = line_line_intersect(la, lb);
            if (!apex) continue;
            // Anchors on their own boundary rays.
            auto on_ray = [&](Point2 p, const Line2& own, const Line2& other) {
                return other.signed_dist(p) >= -tol && std::abs(own.signed_dist(p)) <= tol;
            };
            const CanonicalLine& ca = *oriented[a].first;
            const CanonicalLine& cb = *oriented[b].first;
            bool ok = on_ray(N[ca.i], la, lb) && on_ray(N[cb.i], lb, la);
            if (ca.kind == CanonicalLine::Kind::kTwoPoints) ok = ok && on_ray(N[ca.j], la, lb);
            if (cb.kind == CanonicalLine::Kind::kTwoPoints) ok = ok && on_ray(N[cb.j], lb, la);
            if (!ok) continue;
            const Range w = ClippedWedge{{la, lb}, bbox};
            if (!to_shape(w).interior_point() || !acceptable(w)) continue;
            const Side sb = side_of(cb, lb);
            ts.ranges.push_back(w);
            ts.provenance.push_back(make_provenance("wedge", {&sa, &sb}));
        }
    }
    ts.enumerated = ts.ranges.size();
    if (ts.ranges.size() > opt.budget) {
        const auto keep = uniform_sample(ts.ranges.size(), opt.budget, opt.seed);
        std::vector<Range> r;
        std::vector<Provenance> p;
        for (std::uint32_t k : keep) {
            r.push_back(ts.ranges[k]);
            p.push_back(ts.provenance[k]);
        }
        ts.ranges = std::move(r);
        ts.provenance = std::move(p);
        ts.truncated = true;
    }
    return ts;
}

}  // namespace shallow
