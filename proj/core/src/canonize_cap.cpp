#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "shallow/canonize.h"

namespace shallow {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;
constexpr double kOnEps = 1e-12;
constexpr double kInsideEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Chord {
    Line2 line;
    std::uint32_t p = kNone, q = kNone;
    double theta = -1.0;
    bool flipped = false;
};

double mod_pi(double a) {
    double t = std::fmod(a, kPi);
    if (t < 0) t += kPi;
    if (t >= kPi - 1e-15) t = 0.0;
    return t;
}

void chord_tokens(const Chord& c, Provenance& pv) {
    pv.points.push_back(c.p);
    pv.points.push_back(c.q);
    pv.thetas.push_back(c.q != kNone ? (c.flipped ? -3.0 : -1.0) : c.theta);
}

bool is_flipped(std::span<const Point2> N, std::uint32_t i, std::uint32_t j, const Line2& l) {
    return dot(Line2::through(N[i], N[j]).normal(), l.normal()) < 0.0;
}

// Rotates a line about N[pivot] until it reaches an orientation of D or
// passes through another point of N accepted by `eligible`.
template <class Eligible>
Chord rotate_about(const Line2& line, std::uint32_t pivot, int dir, std::span<const Point2> N,
                   const OrientationSet& D, Eligible eligible) {
    const Point2 q = N[pivot];
    const Point2 d = line.direction();
    const Point2 n = line.normal();
    const double theta = line.angle();
    const double target = dir > 0 ? D.next_at_or_after(theta) : D.prev_at_or_before(theta);
    const double phi_d = std::abs(target - theta);
    double phi_hit = kInf;
    std::uint32_t hit = kNone;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        if (k == pivot || N[k] == q || !eligible(N[k])) continue;
        const Point2 u = N[k] - q;
        double phi = 0.0;
        if (std::abs(cross(d, u)) > kOnEps * std::max(1.0, norm(u))) {
            const double raw = std::atan2(dot(n, u), dot(d, u));
            phi = mod_pi(dir > 0 ? raw : -raw);
        }
        if (phi < phi_hit) {
            phi_hit = phi;
            hit = k;
        }
    }
    Chord out;
    if (hit != kNone && phi_hit <= phi_d + 1e-15) {
        const double rot = theta + dir * phi_hit;
        Line2 l = Line2::through(q, N[hit]);
        if (dot(l.direction(), Point2{std::cos(rot), std::sin(rot)}) < 0) l = l.flipped();
        out.line = l;
        out.p = std::min(pivot, hit);
        out.q = std::max(pivot, hit);
        out.flipped = is_flipped(N, out.p, out.q, l);
    } else {
        out.line = Line2::with_direction(q, target);
        out.p = pivot;
        out.theta = normalize_angle(target);
        if (out.theta > kTwoPi - 1e-12) out.theta = 0.0;
    }
    return out;
}

// Center c0 + t v with the circle held through `fixed`. Returns the first
// t in (0, tmax] at which a point of N accepted by `eligible` crosses the
// circle (enters, or leaves in reporting mode).
template <class Eligible>
std::pair<double, std::uint32_t> first_crossing(std::span<const Point2> N, Point2 c0, Point2 v,
                                                Point2 fixed, std::uint32_t ex1, std::uint32_t ex2,
                                                double tmax, Eligible eligible) {
    const double r2 = dist2(fixed, c0);
    double best = kInf;
    std::uint32_t hit = kNone;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        if (k == ex1 || k == ex2 || N[k] == fixed || !eligible(N[k])) continue;
        const double A = dist2(N[k], c0) - r2;
        const double B = dot(v, N[k] - fixed);
        const double scale = std::max(1.0, r2);
        double t;
        if (std::abs(A) <= 1e-12 * scale) {
            if (B <= 0.0) continue;
            t = 0.0;
        } else {
            if (B == 0.0) continue;
            t = A / (2.0 * B);
            if (t < 0.0) continue;
        }
        if (t <= tmax && t < best) {
            best = t;
            hit = k;
        }
    }
    return {best, hit};
}

struct Ctx {
    std::span<const Point2> N;
    const OrientationSet& D;
    const Box& bbox;
    const CapParams& params;
    Covering& out;

    void push(Range r, Provenance pv) {
        for (const Provenance& e : out.provenance)
            if (e == pv) return;
        out.ranges.push_back(std::move(r));
        out.provenance.push_back(std::move(pv));
    }

    // Cap of circle (c, R) over chord; becomes a disk when the chord misses it.
    void push_cap(const Chord& ch, Point2 c, double R, const char* circle_kind,
                  std::vector<std::uint32_t> pts, std::vector<double> extra = {}) {
        const double s = ch.line.signed_dist(c);
        Provenance pv;
        if (s >= R - 1e-12) {
            pv.kind = std::string("disk:") + circle_kind;
            std::sort(pts.begin(), pts.end());
            pv.points = pts;
            push(Disk{{c, R}}, pv);
            return;
        }
        pv.kind = std::string("cap:") + circle_kind;
        chord_tokens(ch, pv);
        pv.points.insert(pv.points.end(), pts.begin(), pts.end());
        pv.thetas.insert(pv.thetas.end(), extra.begin(), extra.end());
        push(CircularCap{{c, R}, ch.line}, pv);
    }
};

// Bisector slide of a cap whose circle passes through q1, q2, chord fixed.
void bisector_step(Ctx& cx, const Chord& ch, Point2 center, std::uint32_t i1, std::uint32_t i2) {
    const auto N = cx.N;
    if (i2 < i1) std::swap(i1, i2);
    const Point2 q1 = N[i1], q2 = N[i2];
    const Point2 m = 0.5 * (q1 + q2);
    const double h = 0.5 * dist(q1, q2);
    const Point2 w = (1.0 / norm(q2 - q1)) * perp(q2 - q1);
    const double t0 = dot(center - m, w);
    const double s_m = ch.line.signed_dist(m);
    const double k = dot(ch.line.normal(), w);
    const double kap = std::cos(cx.params.beta / 2);
    auto in_open_halfplane = [&](Point2 p) { return ch.line.signed_dist(p) > kOnEps; };
    auto center_at = [&](double t) { return m + t * w; };
    auto radius_at = [&](double t) { return std::sqrt(h * h + t * t); };

    for (int sg : {+1, -1}) {
        // Distance along the motion to each stop; the nearest wins.
        double best = kInf;
        const char* kind = nullptr;
        std::vector<std::uint32_t> pts{std::min(i1, i2), std::max(i1, i2)};
        std::vector<double> extra;
        auto consider = [&](double t, const char* kd) {
            const double dd = sg * (t - t0);
            if (dd < -1e-12 || !(dd < best)) return false;
            best = std::max(0.0, dd);
            kind = kd;
            return true;
        };
        if (std::abs(k) > 1e-15) consider(-s_m / k, "center-on-chord");
        consider(0.0, "diametric");
        // (iv): s(t) = -R(t) cos(beta/2).
        {
            const double A = k * k - kap * kap;
            const double B = 2 * s_m * k;
            const double C = s_m * s_m - kap * kap * h * h;
            std::vector<double> roots;
            if (std::abs(A) < 1e-15) {
                if (std::abs(B) > 1e-15) roots.push_back(-C / B);
            } else {
                const double disc = B * B - 4 * A * C;
                if (disc >= 0) {
                    const double sq = std::sqrt(disc);
                    roots.push_back((-B - sq) / (2 * A));
                    roots.push_back((-B + sq) / (2 * A));
                }
            }
            std::sort(roots.begin(), roots.end());
            for (std::size_t ri = 0; ri < roots.size(); ++ri) {
                const double t = roots[ri];
                const double s = s_m + k * t;
                if (s * kap > 1e-12) continue;  // wrong sign branch of the squared equation
                if (consider(t, "beta")) extra = {cx.params.beta, static_cast<double>(ri)};
            }
        }
        const auto [tau, hit] = first_crossing(N, center, sg * w, q1, i1, i2, kInf, in_open_halfplane);
        std::uint32_t third = kNone;
        if (hit != kNone && tau <= best) {
            best = tau;
            kind = "three";
            third = hit;
            extra.clear();
        }
        if (!kind) {
            // Pencil limit: halfplane bounded by line q1 q2 toward sg*w.
            const Point2 nw = static_cast<double>(sg) * w;
            const Line2 lim(nw.x, nw.y, dot(nw, q1));
            Provenance pv;
            pv.kind = "wedge:pencil";
            chord_tokens(ch, pv);
            pv.points.push_back(std::min(i1, i2));
            pv.points.push_back(std::max(i1, i2));
            pv.thetas.push_back(is_flipped(N, std::min(i1, i2), std::max(i1, i2), lim) ? -3.0 : -1.0);
            cx.push(ClippedWedge{{ch.line, lim}, cx.bbox}, pv);
            continue;
        }
        if (std::string(kind) != "beta") extra.clear();
        const double t = t0 + sg * best;
        if (third != kNone) {
            pts.push_back(third);
            std::sort(pts.begin(), pts.end());
            const Circle2 cc = circumcircle(N[pts[0]], N[pts[1]], N[pts[2]]);
            cx.push_cap(ch, cc.center, cc.radius, kind, pts);
        } else {
            cx.push_cap(ch, center_at(t), radius_at(t), kind, pts, extra);
        }
    }
}

// Slides the center parallel to the chord, circle held through q1.
// Produces final caps when `final_on_chord`, else hands off to the bisector step.
void parallel_slide(Ctx& cx, const Chord& ch, Point2 center, std::uint32_t i1, bool on_chord) {
    const auto N = cx.N;
    const Point2 d = ch.line.direction();
    auto in_open_halfplane = [&](Point2 p) { return ch.line.signed_dist(p) > kOnEps; };
    for (int sg : {+1, -1}) {
        const Point2 v = static_cast<double>(sg) * d;
        const auto [tau, hit] = first_crossing(N, center, v, N[i1], i1, kNone, kInf, in_open_halfplane);
        if (hit == kNone) {
            const Line2 perp_line(v.x, v.y, dot(v, N[i1]));
            Provenance pv;
            pv.kind = "wedge:quadrant";
            chord_tokens(ch, pv);
            pv.points.push_back(i1);
            pv.thetas.push_back(sg);
            cx.push(ClippedWedge{{ch.line, perp_line}, cx.bbox}, pv);
            continue;
        }
        const Point2 c2 = center + tau * v;
        if (on_chord) {
            cx.push_cap(ch, c2, dist(c2, N[i1]), "center-on-chord",
                        {std::min(i1, hit), std::max(i1, hit)});
        } else {
            bisector_step(cx, ch, c2, i1, hit);
        }
    }
}

// Canonizes the disk of a cap whose chord line is already canonical.
void canonize_disk_of_cap(Ctx& cx, const Chord& ch, Point2 c, double rho) {
    const auto N = cx.N;
    // Grow the radius until a point strictly above the chord is met.
    std::uint32_t q1 = kNone;
    double best = kInf;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        if (ch.line.signed_dist(N[k]) <= kOnEps) continue;
        const double dd = dist(N[k], c);
        if (dd < rho - kInsideEps) continue;  // already inside (reporting mode)
        if (dd < best) {
            best = dd;
            q1 = k;
        }
    }
    if (q1 == kNone) {
        Provenance pv;
        pv.kind = "halfplane";
        chord_tokens(ch, pv);
        cx.push(Halfplane{ch.line}, pv);
        return;
    }
    const double s = ch.line.signed_dist(c);
    if (std::abs(s) <= 1e-12) {
        parallel_slide(cx, ch, c, q1, true);
    } else if (s > 0) {
        parallel_slide(cx, ch, c, q1, false);
    } else {
        const double R = dist(c, N[q1]);
        const IntersectionPoints ends = line_circle_intersect(ch.line, {c, R});
        auto in_open_halfplane = [&](Point2 p) { return ch.line.signed_dist(p) > kOnEps; };
        for (Point2 e : ends.view()) {
            const auto [tau, hit] = first_crossing(N, c, e - c, N[q1], q1, kNone, 1.0, in_open_halfplane);
            if (hit != kNone) {
                bisector_step(cx, ch, c + tau * (e - c), q1, hit);
            } else {
                parallel_slide(cx, ch, ch.line.project(e), q1, true);
            }
        }
        if (ends.count < 2) parallel_slide(cx, ch, ch.line.project(c), q1, true);
    }
}

// Disk that is openly N-empty: at most three canonical disks or halfplanes.
void canonize_full_disk(Ctx& cx, Point2 c, double rho) {
    const auto N = cx.N;
    std::uint32_t q1 = kNone;
    double best = kInf;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        const double dd = dist(N[k], c);
        if (dd < rho - kInsideEps) continue;
        if (dd < best) {
            best = dd;
            q1 = k;
        }
    }
    if (q1 == kNone) {
        cx.push(ClippedWedge{{}, cx.bbox}, {"bbox", {}, {}});
        return;
    }
    auto any = [](Point2) { return true; };
    Point2 v = c - N[q1];
    if (norm(v) <= 1e-15) v = {1.0, 0.0};
    v = (1.0 / norm(v)) * v;
    const auto [tau, q2] = first_crossing(N, c, v, N[q1], q1, kNone, kInf, any);
    if (q2 == kNone) {
        // Halfplane tangent at q1; rotate about q1 both ways.
        const Line2 h(v.x, v.y, dot(v, N[q1]));
        for (int dir : {+1, -1}) {
            const Chord ch = rotate_about(h, q1, dir, N, cx.D, any);
            Provenance pv;
            pv.kind = "halfplane";
            chord_tokens(ch, pv);
            cx.push(Halfplane{ch.line}, pv);
        }
        return;
    }
    const Point2 c2 = c + tau * v;
    const Point2 m = 0.5 * (N[q1] + N[q2]);
    const Point2 w = (1.0 / dist(N[q1], N[q2])) * perp(N[q2] - N[q1]);
    const double h = 0.5 * dist(N[q1], N[q2]);
    const double t0 = dot(c2 - m, w);
    const std::uint32_t a = std::min(q1, q2), b = std::max(q1, q2);
    for (int sg : {+1, -1}) {
        double stop = kInf;
        const char* kind = nullptr;
        if (sg * (0.0 - t0) >= -1e-12) {
            stop = std::max(0.0, sg * (0.0 - t0));
            kind = "diametric";
        }
        const auto [tt, q3] = first_crossing(N, c2, sg * w, N[q1], q1, q2, kInf, any);
        if (q3 != kNone && tt <= stop) {
            std::vector<std::uint32_t> pts{a, b, q3};
            std::sort(pts.begin(), pts.end());
            const Circle2 cc = circumcircle(N[pts[0]], N[pts[1]], N[pts[2]]);
            cx.push(Disk{cc}, {"disk:three", pts, {}});
            continue;
        }
        if (kind) {
            cx.push(Disk{{m, h}}, {"disk:diametric", {a, b}, {}});
            continue;
        }
        const Point2 nw = static_cast<double>(sg) * w;
        const Line2 lim(nw.x, nw.y, dot(nw, N[q1]));
        Chord ch;
        ch.line = lim;
        ch.p = a;
        ch.q = b;
        ch.flipped = is_flipped(N, a, b, lim);
        Provenance pv;
        pv.kind = "halfplane";
        chord_tokens(ch, pv);
        cx.push(Halfplane{lim}, pv);
        (void)t0;
    }
}

}  // namespace

Covering cover_cap(const CircularCap& cap, std::span<const Point2> N, const OrientationSet& D,
                   const Box& bbox, const CapParams& params, CoverMode mode) {
    if (mode == CoverMode::kEmptiness && !openly_empty(cap, N, kInsideEps))
        throw Error(ErrorCode::kNotNEmpty, "cap contains a net point");
    const double s0 = cap.chord.signed_dist(cap.disk.center);
    if (s0 < cap.disk.radius && central_angle(cap) < params.beta_min - 1e-9)
        throw Error(ErrorCode::kInvalidArgument, "cap central angle below the configured minimum");

    Covering out;
    Ctx cx{N, D, bbox, params, out};
    const Point2 c = cap.disk.center;
    const double rho = cap.disk.radius;

    // Translate the chord to enlarge the cap until it meets a point in the open disk.
    Line2 line = cap.chord;
    std::uint32_t q = kNone;
    double best = -kInf;
    for (std::uint32_t k = 0; k < N.size(); ++k) {
        if (dist(N[k], c) >= rho - kOnEps) continue;
        const double s = line.signed_dist(N[k]);
        if (s > kOnEps) continue;
        if (s > best) {
            best = s;
            q = k;
        }
    }
    if (q == kNone) {
        canonize_full_disk(cx, c, rho);
        return out;
    }
    line = line.shifted(std::min(0.0, line.signed_dist(N[q])));
    auto in_open_disk = [&](Point2 p) { return dist(p, c) < rho - kOnEps; };
    for (int dir : {+1, -1}) {
        const Chord ch = rotate_about(line, q, dir, N, D, in_open_disk);
        canonize_disk_of_cap(cx, ch, c, rho);
    }
    return out;
}

}  // namespace shallow

namespace shallow {

namespace {

struct NamedCircle {
    Circle2 circle;
    const char* kind;
    std::vector<std::uint32_t> pts;
};

}  // namespace

TestSet enumerate_canonical_caps(std::span<const Point2> N, const OrientationSet& D,
                                 const CapParams& params, const Box& bbox,
                                 const EnumerationOptions& opt) {
    TestSet ts;
    ts.family = Family::kCaps;
    ts.mode = opt.mode;
    ts.alpha = D.alpha;
    ts.cap = params;
    ts.bbox = bbox;
    ts.net_points.assign(N.begin(), N.end());
    auto add = [&](Range r, Provenance pv) {
        const bool ok = opt.mode == CoverMode::kEmptiness ? openly_empty(r, N, kInsideEps)
                                                          : count_inside(r, N, kInsideEps) <= opt.shallow_limit;
        if (!ok) return;
        ts.ranges.push_back(std::move(r));
        ts.provenance.push_back(std::move(pv));
    };
    if (N.empty()) {
        ts.ranges.push_back(ClippedWedge{{}, bbox});
        ts.provenance.push_back({"bbox", {}, {}});
        ts.enumerated = 1;
        return ts;
    }
    const auto n = static_cast<std::uint32_t>(N.size());

    std::vector<NamedCircle> circles;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (N[a] == N[b]) continue;
            circles.push_back({{0.5 * (N[a] + N[b]), 0.5 * dist(N[a], N[b])}, "diametric", {a, b}});
            for (std::uint32_t c = b + 1; c < n; ++c) {
                if (orient2d(N[a], N[b], N[c]) == 0) continue;
                circles.push_back({circumcircle(N[a], N[b], N[c]), "three", {a, b, c}});
            }
        }
    }
    for (const NamedCircle& nc : circles) add(Disk{nc.circle}, {std::string("disk:") + nc.kind, nc.pts, {}});

    // Oriented canonical chord lines.
    std::vector<Chord> chords;
    for (const CanonicalLine& cl : canonical_lines(N, D)) {
        if (cl.kind == CanonicalLine::Kind::kTwoPoints) {
            for (bool flip : {false, true}) {
                Chord ch;
                ch.line = flip ? cl.line.flipped() : cl.line;
                ch.p = cl.i;
                ch.q = cl.j;
                ch.flipped = flip;
                chords.push_back(ch);
            }
        } else {
            if (cl.theta >= kTwoPi - 1e-12) continue;
            Chord ch;
            ch.line = cl.line;
            ch.p = cl.i;
            ch.theta = cl.theta;
            chords.push_back(ch);
        }
    }

    const double kap = std::cos(params.beta / 2);
    for (const Chord& ch : chords) {
        auto above = [&](std::uint32_t k) { return ch.line.signed_dist(N[k]) > kOnEps; };
        {
            Provenance pv;
            pv.kind = "halfplane";
            chord_tokens(ch, pv);
            add(Halfplane{ch.line}, pv);
        }
        auto add_cap = [&](Point2 c, double R, const char* kind, const std::vector<std::uint32_t>& pts,
                           std::vector<double> extra) {
            const double s = ch.line.signed_dist(c);
            if (s >= R - 1e-12 || s <= -R) return;  // full disks and empty caps handled elsewhere
            const CircularCap cap{{c, R}, ch.line};
            if (central_angle(cap) < params.min_output_angle - 1e-9) return;
            Provenance pv;
            pv.kind = std::string("cap:") + kind;
            chord_tokens(ch, pv);
            pv.points.insert(pv.points.end(), pts.begin(), pts.end());
            pv.thetas.insert(pv.thetas.end(), extra.begin(), extra.end());
            add(cap, pv);
        };
        for (const NamedCircle& nc : circles) {
            bool ok = true;
            for (std::uint32_t k : nc.pts) ok = ok && above(k);
            if (ok) add_cap(nc.circle.center, nc.circle.radius, nc.kind, nc.pts, {});
        }
        for (std::uint32_t a = 0; a < n; ++a) {
            if (!above(a)) continue;
            const Point2 d = ch.line.direction();
            for (int sg : {+1, -1}) {
                const Point2 v = static_cast<double>(sg) * d;
                Provenance pv;
                pv.kind = "wedge:quadrant";
                chord_tokens(ch, pv);
                pv.points.push_back(a);
                pv.thetas.push_back(sg);
                add(ClippedWedge{{ch.line, Line2(v.x, v.y, dot(v, N[a]))}, bbox}, pv);
            }
            for (std::uint32_t b = a + 1; b < n; ++b) {
                if (!above(b) || N[a] == N[b]) continue;
                const Point2 m = 0.5 * (N[a] + N[b]);
                const double h = 0.5 * dist(N[a], N[b]);
                const Point2 w = (1.0 / norm(N[b] - N[a])) * perp(N[b] - N[a]);
                const double s_m = ch.line.signed_dist(m);
                const double k = dot(ch.line.normal(), w);
                if (std::abs(k) > 1e-15) {
                    const double t = -s_m / k;
                    const Point2 c = m + t * w;
                    add_cap(c, std::sqrt(h * h + t * t), "center-on-chord", {a, b}, {});
                }
                const double A = k * k - kap * kap, B = 2 * s_m * k, C = s_m * s_m - kap * kap * h * h;
                std::vector<double> roots;
                if (std::abs(A) < 1e-15) {
                    if (std::abs(B) > 1e-15) roots.push_back(-C / B);
                } else if (B * B - 4 * A * C >= 0) {
                    const double sq = std::sqrt(B * B - 4 * A * C);
                    roots.push_back((-B - sq) / (2 * A));
                    roots.push_back((-B + sq) / (2 * A));
                }
                std::sort(roots.begin(), roots.end());
                for (std::size_t ri = 0; ri < roots.size(); ++ri) {
                    const double t = roots[ri];
                    if ((s_m + k * t) * kap > 1e-12) continue;
                    add_cap(m + t * w, std::sqrt(h * h + t * t), "beta", {a, b},
                            {params.beta, static_cast<double>(ri)});
                }
                for (int sg : {+1, -1}) {
                    const Point2 nw = static_cast<double>(sg) * w;
                    const Line2 lim(nw.x, nw.y, dot(nw, N[a]));
                    Provenance pv;
                    pv.kind = "wedge:pencil";
                    chord_tokens(ch, pv);
                    pv.points.push_back(a);
                    pv.points.push_back(b);
                    pv.thetas.push_back(is_flipped(N, a, b, lim) ? -3.0 : -1.0);
                    add(ClippedWedge{{ch.line, lim}, bbox}, pv);
                }
            }
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
