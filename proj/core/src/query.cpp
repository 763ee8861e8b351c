#include "shallow/query.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "shallow/error.h"

namespace shallow {

QueryStats& QueryStats::operator+=(const QueryStats& o) {
    nodes_visited += o.nodes_visited;
    cells_crossed_max = std::max(cells_crossed_max, o.cells_crossed_max);
    leaves_scanned += o.leaves_scanned;
    fallbacks += o.fallbacks;
    return *this;
}

void check_family(const PartitionTree& tree, const Range& range, double eps) {
    const TreeConfig& cfg = tree.config;
    if (cfg.family == Family::kTriangles) {
        const auto* t = std::get_if<FatTriangle>(&range);
        if (!t) throw Error(ErrorCode::kFamilyMismatch, "triangle tree queried with " + range_type_name(range));
        double a = 0.0;
        try {
            a = min_interior_angle(*t);
        } catch (const Error&) {
            throw Error(ErrorCode::kFamilyMismatch, "degenerate triangle query");
        }
        if (a < cfg.alpha - eps)
            throw Error(ErrorCode::kFamilyMismatch, "triangle angle " + std::to_string(a) + " below alpha");
        return;
    }
    if (std::holds_alternative<Disk>(range)) return;
    const auto* c = std::get_if<CircularCap>(&range);
    if (!c) throw Error(ErrorCode::kFamilyMismatch, "cap tree queried with " + range_type_name(range));
    if (!(c->disk.radius > 0)) throw Error(ErrorCode::kFamilyMismatch, "cap with non-positive radius");
    const double s = c->chord.signed_dist(c->disk.center) / c->disk.radius;
    const double angle = 2.0 * std::acos(std::clamp(-s, -1.0, 1.0));
    if (angle < cfg.cap.beta_min - eps)
        throw Error(ErrorCode::kFamilyMismatch, "cap central angle " + std::to_string(angle) + " below beta_min");
}

namespace {

// Walks the tree. Fully covered nodes go to on_cover, nodes to scan point by
// point go to on_scan; either returning true stops the walk.
template <class Cover, class Scan>
void descend(const PartitionTree& tree, const Range& range, const QueryOptions& opt, QueryStats& st,
             Cover on_cover, Scan on_scan) {
    if (tree.nodes.empty()) return;
    const PreparedShape ps(range);
    const CellRelation root_rel = ps.relate(tree.nodes[0].cell, Semantics::kClosed);
    ++st.nodes_visited;
    if (root_rel == CellRelation::kDisjoint) return;
    if (root_rel == CellRelation::kContains) {
        on_cover(tree.nodes[0]);
        return;
    }
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const TreeNode& v = tree.nodes[stack.back()];
        stack.pop_back();
        if (v.is_leaf()) {
            ++st.leaves_scanned;
            if (on_scan(v)) return;
            continue;
        }
        std::vector<std::uint32_t> crossed;
        for (std::uint32_t c : v.children) {
            const TreeNode& w = tree.nodes[c];
            ++st.nodes_visited;
            const CellRelation rel = ps.relate(w.cell, Semantics::kClosed);
            if (rel == CellRelation::kDisjoint) continue;
            if (rel == CellRelation::kContains) {
                if (on_cover(w)) return;
                continue;
            }
            crossed.push_back(c);
        }
        st.cells_crossed_max = std::max(st.cells_crossed_max, crossed.size());
        const double thresh = opt.kappa_thresh > 0 ? opt.kappa_thresh : v.kappa_thresh;
        if (static_cast<double>(crossed.size()) > thresh) {
            // Too many crossings: the range is not shallow here, check every point.
            ++st.fallbacks;
            for (std::uint32_t c : crossed)
                if (on_scan(tree.nodes[c])) return;
            continue;
        }
        for (auto it = crossed.rbegin(); it != crossed.rend(); ++it) stack.push_back(*it);
    }
}

}  // namespace

bool emptiness(const PartitionTree& tree, const Range& range, QueryStats* stats, const QueryOptions& opt) {
    check_family(tree, range, opt.eps_family);
    QueryStats st;
    bool empty = true;
    descend(
        tree, range, opt, st,
        [&](const TreeNode& v) {
            if (v.size() == 0) return false;
            empty = false;
            return true;
        },
        [&](const TreeNode& v) {
            for (std::uint32_t k : tree.node_points(v))
                if (contains_point(range, tree.points[k])) {
                    empty = false;
                    return true;
                }
            return false;
        });
    if (stats) *stats += st;
    return empty;
}

std::vector<std::uint32_t> report(const PartitionTree& tree, const Range& range, QueryStats* stats,
                                  const QueryOptions& opt) {
    check_family(tree, range, opt.eps_family);
    QueryStats st;
    std::vector<std::uint32_t> out;
    descend(
        tree, range, opt, st,
        [&](const TreeNode& v) {
            const auto pts = tree.node_points(v);
            out.insert(out.end(), pts.begin(), pts.end());
            return false;
        },
        [&](const TreeNode& v) {
            for (std::uint32_t k : tree.node_points(v))
                if (contains_point(range, tree.points[k])) out.push_back(k);
            return false;
        });
    std::sort(out.begin(), out.end());
    if (stats) *stats += st;
    return out;
}

RangeCover canonical_cover(const PartitionTree& tree, const Range& range, QueryStats* stats,
                           const QueryOptions& opt) {
    check_family(tree, range, opt.eps_family);
    QueryStats st;
    RangeCover out;
    descend(
        tree, range, opt, st,
        [&](const TreeNode& v) {
            if (v.size() > 0) out.nodes.push_back(static_cast<std::uint32_t>(&v - tree.nodes.data()));
            return false;
        },
        [&](const TreeNode& v) {
            for (std::uint32_t k : tree.node_points(v))
                if (contains_point(range, tree.points[k])) out.points.push_back(k);
            return false;
        });
    std::sort(out.points.begin(), out.points.end());
    if (stats) *stats += st;
    return out;
}

std::optional<Nearest> nearest_above_line(const PartitionTree& tree, Point2 q, const Line2& line, double tol,
                                          QueryStats* stats, const QueryOptions& opt) {
    if (tree.config.family != Family::kCaps)
        throw Error(ErrorCode::kFamilyMismatch, "nearest_above_line needs a cap tree");
    if (line.signed_dist(q) < 0.0) throw Error(ErrorCode::kQBelowLine, "query point below the line");
    if (tol <= 0) tol = 1e-6 * tree.bbox.diameter();
    double hi = 0.0;
    for (Point2 c : tree.bbox.corners()) hi = std::max(hi, dist(q, c));
    hi = std::max(hi * (1 + 1e-9), tol);
    auto cap = [&](double rho) { return CircularCap{{q, rho}, line}; };
    QueryStats st;
    if (emptiness(tree, cap(hi), &st, opt)) {
        if (stats) *stats += st;
        return std::nullopt;
    }
    double lo = 0.0;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (emptiness(tree, cap(mid), &st, opt)) lo = mid;
        else hi = mid;
    }
    const std::vector<std::uint32_t> hits = report(tree, cap(hi), &st, opt);
    // Caps are nested, so the bracket's upper end must still be nonempty.
    if (hits.empty()) throw Error(ErrorCode::kInvalidArgument, "non-monotone emptiness during bisection");
    std::optional<Nearest> best;
    for (std::uint32_t k : hits) {
        const double d = dist(q, tree.points[k]);
        if (!best || d < best->distance || (d == best->distance && k < best->index)) best = Nearest{k, d};
    }
    if (stats) *stats += st;
    return best;
}

}  // namespace shallow
