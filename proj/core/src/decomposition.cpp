#include "shallow/decomposition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "json.hpp"

#include "shallow/error.h"

namespace shallow {

namespace {

constexpr std::uint32_t kNoCurve = 0xFFFFFFFDu;
constexpr std::uint32_t kClipBottom = 0xFFFFFFFEu;
constexpr std::uint32_t kClipTop = 0xFFFFFFFFu;
constexpr std::uint32_t kLowerArcSlot = ConvexShape::kMaxLines;
constexpr std::uint32_t kUpperArcSlot = ConvexShape::kMaxLines + 1;
constexpr std::uint32_t kSlots = 16;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint32_t curve_id(std::size_t shape, std::uint32_t slot) {
    return static_cast<std::uint32_t>(shape) * kSlots + slot;
}

struct Interval {
    double lo, hi;
    std::uint32_t lo_id, hi_id;
};

// Vertical extent of shape `idx` on the line x = const.
bool vertical_extent(const ConvexShape& s, std::size_t idx, double x, Interval& iv) {
    double lo = -kInf, hi = kInf;
    std::uint32_t lo_id = kNoCurve, hi_id = kNoCurve;
    for (int k = 0; k < s.line_count; ++k) {
        const Line2& l = s.lines[k];
        if (l.is_vertical()) {
            if (l.a() * x - l.c() < 0.0) return false;
            continue;
        }
        const double y = l.y_at(x);
        if (l.b() > 0.0) {
            if (y > lo) {
                lo = y;
                lo_id = curve_id(idx, static_cast<std::uint32_t>(k));
            }
        } else if (y < hi) {
            hi = y;
            hi_id = curve_id(idx, static_cast<std::uint32_t>(k));
        }
    }
    if (s.disk) {
        const double dx = x - s.disk->center.x;
        const double r = s.disk->radius;
        if (!(std::abs(dx) < r)) return false;
        const double h = std::sqrt(r * r - dx * dx);
        if (s.disk->center.y - h > lo) {
            lo = s.disk->center.y - h;
            lo_id = curve_id(idx, kLowerArcSlot);
        }
        if (s.disk->center.y + h < hi) {
            hi = s.disk->center.y + h;
            hi_id = curve_id(idx, kUpperArcSlot);
        }
    }
    if (!(hi > lo)) return false;
    iv = {lo, hi, lo_id, hi_id};
    return true;
}

Curve curve_of(const std::vector<ConvexShape>& shapes, const ElementaryCell& clip,
               std::uint32_t id) {
    if (id == kClipBottom) return clip.bottom;
    if (id == kClipTop) return clip.top;
    const ConvexShape& s = shapes[id / kSlots];
    const std::uint32_t slot = id % kSlots;
    if (slot == kLowerArcSlot) return Curve::lower_arc(*s.disk);
    if (slot == kUpperArcSlot) return Curve::upper_arc(*s.disk);
    return Curve::of_line(s.lines[slot]);
}

// A boundary curve in intersection tests: a line or a full circle.
struct BCurve {
    bool is_circle = false;
    Line2 line;
    Circle2 circle;
};

void shape_curves(const ConvexShape& s, std::vector<BCurve>& out, bool skip_vertical) {
    out.clear();
    for (const Line2& l : s.halfplanes()) {
        if (skip_vertical && l.is_vertical()) continue;
        out.push_back({false, l, {}});
    }
    if (s.disk) out.push_back({true, {}, *s.disk});
}

void intersect(const BCurve& a, const BCurve& b, const Tolerance& tol, std::vector<Point2>& out) {
    if (!a.is_circle && !b.is_circle) {
        if (auto p = line_line_intersect(a.line, b.line)) out.push_back(*p);
    } else if (a.is_circle && b.is_circle) {
        for (Point2 p : circle_circle_intersect(a.circle, b.circle, tol).view()) out.push_back(p);
    } else {
        const BCurve& l = a.is_circle ? b : a;
        const BCurve& c = a.is_circle ? a : b;
        for (Point2 p : line_circle_intersect(l.line, c.circle, tol).view()) out.push_back(p);
    }
}

bool boxes_overlap(const Box& a, const Box& b, double eps) {
    return a.xmin <= b.xmax + eps && b.xmin <= a.xmax + eps && a.ymin <= b.ymax + eps &&
           b.ymin <= a.ymax + eps;
}

// Uniform grid over shape bounding boxes, answering "is p strictly inside
// some shape other than a and b".
class CoverIndex {
public:
    CoverIndex(const std::vector<ConvexShape>& shapes, const std::vector<Box>& boxes,
               const Box& world, double eps)
        : shapes_(shapes), boxes_(boxes), world_(world), eps_(eps) {
        const std::size_t m = shapes.size();
        g_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(m))));
        buckets_.assign(g_ * g_, {});
        for (std::size_t i = 0; i < m; ++i) {
            const Box& b = boxes[i];
            if (b.xmax < b.xmin) continue;
            const auto [x0, y0] = cell_of({b.xmin, b.ymin});
            const auto [x1, y1] = cell_of({b.xmax, b.ymax});
            for (std::size_t gx = x0; gx <= x1; ++gx)
                for (std::size_t gy = y0; gy <= y1; ++gy) buckets_[gx * g_ + gy].push_back(i);
        }
    }

    bool covered(Point2 p, std::size_t a, std::size_t b) const {
        const auto [gx, gy] = cell_of(p);
        for (std::size_t i : buckets_[gx * g_ + gy]) {
            if (i == a || i == b) continue;
            if (!boxes_[i].contains(p)) continue;
            if (shapes_[i].depth(p) > eps_) return true;
        }
        return false;
    }

private:
    std::pair<std::size_t, std::size_t> cell_of(Point2 p) const {
        auto idx = [&](double v, double lo, double w) {
            if (!(w > 0.0)) return std::size_t{0};
            const double t = (v - lo) / w * static_cast<double>(g_);
            if (!(t > 0.0)) return std::size_t{0};
            return std::min(g_ - 1, static_cast<std::size_t>(t));
        };
        return {idx(p.x, world_.xmin, world_.width()), idx(p.y, world_.ymin, world_.height())};
    }

    const std::vector<ConvexShape>& shapes_;
    const std::vector<Box>& boxes_;
    Box world_;
    double eps_;
    std::size_t g_ = 1;
    std::vector<std::vector<std::size_t>> buckets_;
};

Box expanded(const Box& b, double d) { return {b.xmin - d, b.ymin - d, b.xmax + d, b.ymax + d}; }

}  // namespace

std::vector<ElementaryCell> union_complement_decompose(const std::vector<ConvexShape>& all_shapes,
                                                       const ElementaryCell& clip,
                                                       const Tolerance& tol) {
    const Box clip_box = clip.bounding_box();
    const Box world = expanded(clip_box, 1e-9);

    // Only shapes meeting the clip box matter.
    std::vector<ConvexShape> shapes;
    std::vector<Box> boxes;
    for (const ConvexShape& s : all_shapes) {
        const Box b = s.bounding_box(clip_box);
        if (b.xmax < b.xmin || !boxes_overlap(b, clip_box, tol.eps_dist)) continue;
        shapes.push_back(s);
        boxes.push_back(b);
    }
    const std::size_t m = shapes.size();

    // Candidate event abscissae.
    std::vector<double> events{clip.x_left, clip.x_right};
    const CoverIndex cover(shapes, boxes, world, tol.eps_dist);
    auto consider = [&](Point2 p, std::size_t a, std::size_t b) {
        if (!(p.x > clip.x_left && p.x < clip.x_right)) return;
        if (!world.contains(p)) return;
        if (cover.covered(p, a, b)) return;
        events.push_back(p.x);
    };

    std::vector<BCurve> ca, cb;
    std::vector<Point2> pts;
    std::vector<BCurve> clip_curves;
    for (const Curve* c : {&clip.bottom, &clip.top}) {
        if (c->is_arc()) clip_curves.push_back({true, {}, c->circle});
        else clip_curves.push_back({false, c->line, {}});
    }
    const Curve* clip_src[2] = {&clip.bottom, &clip.top};

    for (std::size_t i = 0; i < m; ++i) {
        const ConvexShape& s = shapes[i];
        for (const Line2& l : s.halfplanes()) {
            if (l.is_vertical()) {
                const double x = l.c() / l.a();
                if (x > clip.x_left && x < clip.x_right) events.push_back(x);
            }
        }
        if (s.disk) {
            for (double sgn : {-1.0, 1.0}) {
                const Point2 p{s.disk->center.x + sgn * s.disk->radius, s.disk->center.y};
                if (s.contains(p, tol.eps_dist)) consider(p, i, i);
            }
        }
        shape_curves(s, ca, true);
        for (std::size_t u = 0; u < ca.size(); ++u) {
            for (std::size_t v = u + 1; v < ca.size(); ++v) {
                pts.clear();
                intersect(ca[u], ca[v], tol, pts);
                for (Point2 p : pts)
                    if (s.contains(p, tol.eps_dist)) consider(p, i, i);
            }
            for (int k = 0; k < 2; ++k) {
                pts.clear();
                intersect(ca[u], clip_curves[k], tol, pts);
                for (Point2 p : pts) {
                    if (!clip_src[k]->on_half(p, tol.eps_dist)) continue;
                    if (s.contains(p, tol.eps_dist)) consider(p, i, i);
                }
            }
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!boxes_overlap(boxes[i], boxes[j], tol.eps_dist)) continue;
            shape_curves(shapes[j], cb, true);
            for (const BCurve& x : ca) {
                for (const BCurve& y : cb) {
                    pts.clear();
                    intersect(x, y, tol, pts);
                    for (Point2 p : pts) {
                        if (s.contains(p, tol.eps_dist) && shapes[j].contains(p, tol.eps_dist))
                            consider(p, i, j);
                    }
                }
            }
        }
    }
    std::sort(events.begin(), events.end());
    std::vector<double> xs;
    for (double x : events) {
        if (x < clip.x_left || x > clip.x_right) continue;
        if (xs.empty() || x - xs.back() > tol.eps_pred) xs.push_back(x);
    }

    struct Open {
        std::uint32_t bot, top;
        double x_left, x_right;
    };
    std::vector<ElementaryCell> out;
    auto finalize = [&](const Open& o) {
        ElementaryCell c;
        c.x_left = o.x_left;
        c.x_right = o.x_right;
        c.bottom = curve_of(shapes, clip, o.bot);
        c.top = curve_of(shapes, clip, o.top);
        c.id = static_cast<std::uint32_t>(out.size());
        out.push_back(c);
    };

    std::vector<Open> open, next;
    std::vector<Interval> ivs;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k], x1 = xs[k + 1];
        const double xm = 0.5 * (x0 + x1);
        const double cb_y = clip.bottom.y_at(xm);
        const double ct_y = clip.top.y_at(xm);
        ivs.clear();
        for (std::size_t i = 0; i < m; ++i) {
            if (xm < boxes[i].xmin || xm > boxes[i].xmax) continue;
            Interval iv;
            if (vertical_extent(shapes[i], i, xm, iv)) ivs.push_back(iv);
        }
        std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.lo_id < b.lo_id);
        });
        next.clear();
        auto emit = [&](std::uint32_t bot, std::uint32_t top) {
            for (Open& o : open) {
                if (o.bot == bot && o.top == top && o.x_right >= x0) {
                    o.x_right = x1;
                    next.push_back(o);
                    o.bot = kNoCurve;  // consumed
                    return;
                }
            }
            next.push_back({bot, top, x0, x1});
        };
        double cur = cb_y;
        std::uint32_t cur_id = kClipBottom;
        for (const Interval& iv : ivs) {
            if (cur >= ct_y) break;
            if (iv.lo > cur + tol.eps_pred) {
                if (iv.lo < ct_y) emit(cur_id, iv.lo_id);
                else emit(cur_id, kClipTop);
            }
            if (iv.hi > cur) {
                cur = iv.hi;
                cur_id = iv.hi_id;
            }
        }
        if (ct_y > cur + tol.eps_pred) emit(cur_id, kClipTop);
        for (const Open& o : open)
            if (o.bot != kNoCurve) finalize(o);
        std::swap(open, next);
    }
    for (const Open& o : open) finalize(o);
    return out;
}

std::vector<ElementaryCell> union_complement_decompose(const std::vector<Range>& ranges,
                                                       const ElementaryCell& clip,
                                                       const Tolerance& tol) {
    std::vector<ConvexShape> shapes;
    shapes.reserve(ranges.size());
    for (const Range& r : ranges) shapes.push_back(to_shape(r));
    return union_complement_decompose(shapes, clip, tol);
}

std::size_t count_distinct(std::vector<Point2> pts, double eps) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point2> reps;
    for (Point2 p : pts) {
        bool seen = false;
        for (auto it = reps.rbegin(); it != reps.rend() && it->x >= p.x - eps; ++it)
            if (std::abs(it->y - p.y) <= eps) {
                seen = true;
                break;
            }
        if (!seen) reps.push_back(p);
    }
    return reps.size();
}

std::size_t union_boundary_vertices(const std::vector<Range>& ranges, const Tolerance& tol) {
    std::vector<ConvexShape> shapes;
    std::vector<Box> boxes;
    Box world{kInf, kInf, -kInf, -kInf};
    for (const Range& r : ranges) {
        shapes.push_back(to_shape(r));
        boxes.push_back(range_bounding_box(r, {-1e3, -1e3, 1e3, 1e3}));
        world.xmin = std::min(world.xmin, boxes.back().xmin);
        world.ymin = std::min(world.ymin, boxes.back().ymin);
        world.xmax = std::max(world.xmax, boxes.back().xmax);
        world.ymax = std::max(world.ymax, boxes.back().ymax);
    }
    if (shapes.empty()) return 0;
    const CoverIndex cover(shapes, boxes, expanded(world, 1e-9), tol.eps_dist);
    std::vector<Point2> verts;
    std::vector<BCurve> ca, cb;
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        shape_curves(shapes[i], ca, false);
        for (std::size_t u = 0; u < ca.size(); ++u) {
            for (std::size_t v = u + 1; v < ca.size(); ++v) {
                pts.clear();
                intersect(ca[u], ca[v], tol, pts);
                for (Point2 p : pts)
                    if (shapes[i].contains(p, tol.eps_dist) && !cover.covered(p, i, i)) verts.push_back(p);
            }
        }
        for (std::size_t j = i + 1; j < shapes.size(); ++j) {
            if (!boxes_overlap(boxes[i], boxes[j], tol.eps_dist)) continue;
            shape_curves(shapes[j], cb, false);
            for (const BCurve& x : ca) {
                for (const BCurve& y : cb) {
                    pts.clear();
                    intersect(x, y, tol, pts);
                    for (Point2 p : pts) {
                        if (shapes[i].contains(p, tol.eps_dist) &&
                            shapes[j].contains(p, tol.eps_dist) && !cover.covered(p, i, j))
                            verts.push_back(p);
                    }
                }
            }
        }
    }
    return count_distinct(verts, tol.eps_dist);
}

int WeightedRanges::max_kappa() const {
    int k = 0;
    if (!kappa.empty()) k = *std::max_element(kappa.begin(), kappa.end());
    return k;
}

double WeightedRanges::shifted_weight(std::size_t i) const {
    return std::ldexp(1.0, kappa[i] - max_kappa());
}

double WeightedRanges::shifted_total() const {
    const int km = max_kappa();
    double w = 0.0;
    for (int k : kappa) w += std::ldexp(1.0, k - km);
    return w;
}

double WeightedRanges::log2_total() const {
    if (kappa.empty()) return -kInf;
    return max_kappa() + std::log2(shifted_total());
}

double Cutting::crossing_weight(const WeightedRanges& wr, std::size_t cell) const {
    const int km = wr.max_kappa();
    double w = 0.0;
    for (std::uint32_t id : crossing[cell]) w += std::ldexp(1.0, wr.kappa[id] - km);
    return w;
}

std::vector<std::uint32_t> crossing_list(const std::vector<PreparedShape>& prepared,
                                         const ElementaryCell& cell,
                                         const std::vector<std::uint32_t>& candidates) {
    std::vector<std::uint32_t> out;
    auto test = [&](std::uint32_t id) {
        if (prepared[id].relate(cell, Semantics::kOpen) == CellRelation::kCrosses) out.push_back(id);
    };
    if (candidates.empty()) {
        for (std::size_t i = 0; i < prepared.size(); ++i) test(static_cast<std::uint32_t>(i));
    } else {
        for (std::uint32_t id : candidates) test(id);
    }
    return out;
}

Cutting shallow_cutting(const WeightedRanges& wr, double r, const ElementaryCell& clip,
                        std::uint64_t seed, const CuttingOptions& opt) {
    if (!(r >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "cutting parameter r must be >= 1");
    if (wr.size() == 0) throw Error(ErrorCode::kInvalidArgument, "cutting of an empty range set");
    if (wr.kappa.size() != wr.size())
        throw Error(ErrorCode::kInvalidArgument, "weight exponents do not match ranges");

    std::mt19937_64 rng(seed);
    const std::size_t n = wr.size();
    std::vector<ConvexShape> shapes;
    std::vector<PreparedShape> prepared;
    shapes.reserve(n);
    prepared.reserve(n);
    for (const Range& rg : wr.ranges) {
        shapes.push_back(to_shape(rg));
        prepared.emplace_back(shapes.back(), opt.tol);
    }
    const int km = wr.max_kappa();
    std::vector<double> w(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += (w[i] = std::ldexp(1.0, wr.kappa[i] - km));
    const double limit = total / r * (1.0 + 1e-12);
    auto weight_of = [&](const std::vector<std::uint32_t>& ids) {
        double s = 0.0;
        for (std::uint32_t id : ids) s += w[id];
        return s;
    };
    auto select = [&](const std::vector<std::uint32_t>& ids) {
        std::vector<ConvexShape> out;
        out.reserve(ids.size());
        for (std::uint32_t id : ids) out.push_back(shapes[id]);
        return out;
    };

    Cutting cut;
    const auto k0 = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(opt.c_s * r)));
    const std::vector<std::uint32_t> sample = weighted_sample(wr, {}, k0, rng);
    std::vector<std::uint32_t> witnesses = sample;
    cut.cells = union_complement_decompose(select(sample), clip, opt.tol);
    for (const ElementaryCell& c : cut.cells) cut.crossing.push_back(crossing_list(prepared, c));
    cut.initial_cells = cut.cells.size();

    cut.compliant = false;
    for (int round = 0; round <= opt.max_rounds; ++round) {
        bool violated = false;
        for (std::size_t i = 0; i < cut.cells.size(); ++i)
            if (weight_of(cut.crossing[i]) > limit) violated = true;
        if (!violated) {
            cut.compliant = true;
            break;
        }
        if (round == opt.max_rounds) break;
        ++cut.rounds;
        std::vector<ElementaryCell> cells;
        std::vector<std::vector<std::uint32_t>> crossing;
        for (std::size_t i = 0; i < cut.cells.size(); ++i) {
            const double wt = weight_of(cut.crossing[i]);
            if (wt <= limit) {
                cells.push_back(cut.cells[i]);
                crossing.push_back(std::move(cut.crossing[i]));
                continue;
            }
            const double xi = wt / (total / r);
            const std::vector<std::uint32_t>& gamma = cut.crossing[i];
            const auto q = std::min<std::size_t>(
                gamma.size(), static_cast<std::size_t>(std::ceil(opt.c_s * xi * std::log2(xi + 1.0))));
            const std::vector<std::uint32_t> sub = weighted_sample(wr, gamma, q, rng);
            witnesses.insert(witnesses.end(), sub.begin(), sub.end());
            for (const ElementaryCell& c : union_complement_decompose(select(sub), cut.cells[i], opt.tol)) {
                cells.push_back(c);
                crossing.push_back(crossing_list(prepared, c, gamma));
            }
        }
        cut.cells = std::move(cells);
        cut.crossing = std::move(crossing);
    }
    for (std::size_t i = 0; i < cut.cells.size(); ++i) cut.cells[i].id = static_cast<std::uint32_t>(i);
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
    cut.uncovered_witnesses = std::move(witnesses);
    if (opt.cell_budget > 0 && cut.cells.size() > opt.cell_budget) {
        throw Error(ErrorCode::kCuttingSizeExceeded,
                    std::to_string(cut.cells.size()) + " cells exceed budget " +
                        std::to_string(opt.cell_budget));
    }
    return cut;
}

std::string cells_to_json(const std::vector<ElementaryCell>& cells) {
    constexpr int kSegments = 64;
    nlohmann::json arr = nlohmann::json::array();
    for (const ElementaryCell& c : cells) {
        nlohmann::json poly = nlohmann::json::array();
        auto trace = [&](const Curve& cv, bool forward) {
            const int steps = cv.is_arc() ? kSegments : 1;
            for (int s = 0; s <= steps; ++s) {
                const double t = static_cast<double>(forward ? s : steps - s) / steps;
                const double x = c.x_left + t * (c.x_right - c.x_left);
                poly.push_back({x, cv.y_at(x)});
            }
        };
        trace(c.bottom, true);
        trace(c.top, false);
        arr.push_back({{"id", c.id}, {"polygon", poly}});
    }
    return arr.dump();
}

}  // namespace shallow
