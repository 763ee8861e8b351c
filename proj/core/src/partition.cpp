#include "shallow/partition.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shallow/error.h"

namespace shallow {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t z = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

double zeta(Family family, double m) {
    if (m <= 0) return 0.0;
    if (family == Family::kTriangles) {
        const double ll = m > std::exp(1.0) ? std::log(std::log(m)) : 0.0;
        return m * std::max(1.0, ll);
    }
    const double l = std::log(m + 2.0);
    return m * l * l;
}

double zeta_inv(Family family, double r) {
    if (r <= 0) return 0.0;
    double lo = 0.0, hi = r;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, r); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (zeta(family, mid) <= r) lo = mid;
        else hi = mid;
    }
    return lo;
}

double kappa_bound(Family family, double r, std::size_t q_size, double c_kappa) {
    return c_kappa * (r / zeta_inv(family, r) + std::log2(std::max<std::size_t>(q_size, 1)));
}

double kappa_threshold(Family family, double r, std::size_t q_size, double c_kappa) {
    return c_kappa * (r / zeta_inv(family, r) +
                      std::log2(std::max<std::size_t>(q_size, 1)) * std::log2(std::max(r, 2.0)));
}

HalfPartition half_partition(std::span<const Point2> P, const std::vector<std::uint32_t>& ids,
                             const std::vector<Range>& Q, double r, Family family,
                             const ElementaryCell& clip, std::uint64_t seed,
                             const PartitionParams& params) {
    if (!(r >= 2.0)) throw Error(ErrorCode::kInvalidArgument, "half_partition needs r >= 2");
    const std::size_t n = ids.size();
    const auto m = static_cast<std::size_t>(std::floor(static_cast<double>(n) / r));
    if (m == 0) throw Error(ErrorCode::kInvalidArgument, "half_partition needs r <= n");

    HalfPartition hp;
    hp.t = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(params.c_t * zeta_inv(family, r))));
    hp.cell_budget = std::max<std::size_t>(1, static_cast<std::size_t>(r / 4));
    WeightedRanges wr(Q);
    std::vector<PreparedShape> prepared;
    prepared.reserve(Q.size());
    for (const Range& q : Q) prepared.emplace_back(q);
    CuttingOptions copt = params.cutting;
    copt.cell_budget = 0;

    std::vector<char> taken(n, 0);
    std::size_t assigned = 0;
    std::size_t round = 0;
    while (2 * assigned < n) {
        std::vector<std::uint32_t> members;
        ElementaryCell chosen;
        bool found = false;
        for (int attempt = 0; attempt <= params.retries && !found && !Q.empty(); ++attempt) {
            const Cutting cut = shallow_cutting(wr, static_cast<double>(hp.t), clip,
                                                mix(seed, round, attempt), copt);
            hp.max_cutting_cells = std::max(hp.max_cutting_cells, cut.cells.size());
            if (cut.cells.empty()) continue;
            std::vector<std::vector<std::uint32_t>> inside(cut.cells.size());
            for (std::size_t k = 0; k < n; ++k) {
                if (taken[k]) continue;
                const Point2 p = P[ids[k]];
                for (std::size_t c = 0; c < cut.cells.size(); ++c) {
                    const ElementaryCell& cell = cut.cells[c];
                    if (p.x < cell.x_left || p.x > cell.x_right) continue;
                    if (cell.contains(p)) inside[c].push_back(static_cast<std::uint32_t>(k));
                }
            }
            std::size_t best = 0;
            for (std::size_t c = 1; c < inside.size(); ++c)
                if (inside[c].size() > inside[best].size()) best = c;
            if (inside[best].size() < m) continue;
            chosen = cut.cells[best];
            members = inside[best];
            // Lowest point indices first.
            std::sort(members.begin(), members.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return ids[a] < ids[b]; });
            members.resize(m);
            found = true;
        }
        if (!found) {
            // Vertical slab of the clip cell around the m leftmost unassigned points.
            std::vector<std::uint32_t> free;
            for (std::size_t k = 0; k < n; ++k)
                if (!taken[k]) free.push_back(static_cast<std::uint32_t>(k));
            std::sort(free.begin(), free.end(), [&](std::uint32_t a, std::uint32_t b) {
                const Point2 pa = P[ids[a]], pb = P[ids[b]];
                return pa.x != pb.x ? pa.x < pb.x : ids[a] < ids[b];
            });
            members.assign(free.begin(), free.begin() + static_cast<std::ptrdiff_t>(m));
            const double xl = P[ids[members.front()]].x;
            const double xr = P[ids[members.back()]].x;
            chosen = clip.trimmed(xl, xr);
            ++hp.fallbacks;
        }
        PartitionClass cls;
        cls.cell = chosen;
        cls.cell.id = static_cast<std::uint32_t>(hp.classes.size());
        for (std::uint32_t k : members) {
            taken[k] = 1;
            cls.points.push_back(ids[k]);
        }
        std::sort(cls.points.begin(), cls.points.end());
        assigned += members.size();
        std::vector<std::uint32_t> crossed = crossing_list(prepared, cls.cell);
        for (std::uint32_t q : crossed) ++wr.kappa[q];
        hp.round_crossed.push_back(std::move(crossed));
        hp.classes.push_back(std::move(cls));
        ++round;
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!taken[k]) hp.leftover.push_back(ids[k]);
    std::sort(hp.leftover.begin(), hp.leftover.end());
    hp.kappa = wr.kappa;
    return hp;
}

FullPartition full_partition(std::span<const Point2> P, const std::vector<std::uint32_t>& ids,
                             const std::vector<Range>& Q, double r, Family family,
                             const ElementaryCell& clip, std::uint64_t seed,
                             const PartitionParams& params) {
    if (!(r >= 2.0)) throw Error(ErrorCode::kInvalidArgument, "full_partition needs r >= 2");
    FullPartition fp;
    const double stop = static_cast<double>(ids.size()) / r;
    std::vector<std::uint32_t> rest = ids;
    double rj = r;
    std::uint64_t round = 0;
    while (rest.size() >= 2 && static_cast<double>(rest.size()) > stop) {
        const double rr = std::max(2.0, std::min(rj, static_cast<double>(rest.size())));
        HalfPartition hp = half_partition(P, rest, Q, rr, family, clip, mix(seed, 0xA5, round++), params);
        for (PartitionClass& c : hp.classes) {
            c.cell.id = static_cast<std::uint32_t>(fp.classes.size());
            fp.classes.push_back(c);
        }
        fp.fallbacks += hp.fallbacks;
        rest = hp.leftover;
        fp.rounds.push_back(std::move(hp));
        rj /= 2;
    }
    if (!rest.empty()) {
        PartitionClass c;
        c.points = std::move(rest);
        c.cell = clip;
        c.cell.id = static_cast<std::uint32_t>(fp.classes.size());
        fp.classes.push_back(std::move(c));
    }
    return fp;
}

std::size_t crossing_number(const Range& range, const std::vector<PartitionClass>& classes) {
    const PreparedShape ps(range);
    std::size_t k = 0;
    for (const PartitionClass& c : classes)
        if (ps.relate(c.cell, Semantics::kOpen) == CellRelation::kCrosses) ++k;
    return k;
}

Box points_bbox(std::span<const Point2> P) {
    if (P.empty()) return kUnitBox;
    const Box b = Box::bounding(P);
    const double side = std::max({b.width(), b.height(), 1e-9});
    const double pad = 0.01 * side;
    const double cx = 0.5 * (b.xmin + b.xmax), cy = 0.5 * (b.ymin + b.ymax);
    const double h = 0.5 * side + pad;
    return {cx - h, cy - h, cx + h, cy + h};
}

std::size_t PartitionTree::depth() const {
    std::vector<std::size_t> d(nodes.size(), 1);
    std::size_t best = nodes.empty() ? 0 : 1;
    for (std::size_t v = 0; v < nodes.size(); ++v)
        for (std::uint32_t c : nodes[v].children) {
            d[c] = d[v] + 1;
            best = std::max(best, d[c]);
        }
    return best;
}

namespace {

struct Builder {
    PartitionTree& tree;

    std::uint32_t build(std::vector<std::uint32_t> ids, const ElementaryCell& cell, std::uint64_t seed) {
        const TreeConfig& cfg = tree.config;
        const auto v = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        {
            TreeNode& node = tree.nodes[v];
            node.cell = cell;
            node.begin = static_cast<std::uint32_t>(tree.order.size());
        }
        if (ids.size() <= cfg.leaf_size) {
            tree.order.insert(tree.order.end(), ids.begin(), ids.end());
            tree.nodes[v].end = static_cast<std::uint32_t>(tree.order.size());
            return v;
        }
        // Near the leaves a full r-way split would scatter points into tiny leaves.
        const double r = std::clamp(static_cast<double>(ids.size()) / static_cast<double>(cfg.leaf_size),
                                    2.0, cfg.r);
        // Net and test set drawn from this node's points.
        const ShallowNet net = draw_shallow_net(ids.size(), r, cfg.net, mix(seed, 1));
        std::vector<Point2> N;
        N.reserve(net.sample.size());
        for (std::uint32_t k : net.sample) N.push_back(tree.points[ids[k]]);
        SampledOptions so;
        so.budget = cfg.test_budget;
        so.seed = mix(seed, 2);
        so.mode = cfg.mode;
        so.shallow_limit = cfg.mode == CoverMode::kReporting
                               ? static_cast<std::size_t>(std::ceil(std::log(std::max(r, 2.0))))
                               : 0;
        const TestSet ts = sampled_test_set(cfg.family, N, cfg.alpha, cfg.cap, tree.bbox, so);
        const FullPartition fp = full_partition(tree.points, ids, ts.ranges, r, cfg.family, cell,
                                                mix(seed, 3), cfg.partition);
        std::uint32_t max_cross = 0;
        for (const Range& q : ts.ranges)
            max_cross = std::max(max_cross, static_cast<std::uint32_t>(crossing_number(q, fp.classes)));
        {
            TreeNode& node = tree.nodes[v];
            node.q_size = static_cast<std::uint32_t>(ts.size());
            node.max_crossing = max_cross;
            node.fallbacks = static_cast<std::uint32_t>(fp.fallbacks);
            node.kappa_thresh = kappa_threshold(cfg.family, r, ts.size(), cfg.partition.c_kappa);
        }
        std::vector<std::uint32_t> kids;
        std::uint64_t k = 0;
        for (const PartitionClass& c : fp.classes) {
            if (c.points.empty()) continue;
            // A class that did not shrink becomes a leaf to guarantee progress.
            if (c.points.size() == ids.size()) {
                const auto leaf = static_cast<std::uint32_t>(tree.nodes.size());
                tree.nodes.emplace_back();
                tree.nodes[leaf].cell = c.cell;
                tree.nodes[leaf].begin = static_cast<std::uint32_t>(tree.order.size());
                tree.order.insert(tree.order.end(), c.points.begin(), c.points.end());
                tree.nodes[leaf].end = static_cast<std::uint32_t>(tree.order.size());
                kids.push_back(leaf);
                continue;
            }
            kids.push_back(build(c.points, c.cell, mix(seed, 4, k++)));
        }
        tree.nodes[v].children = std::move(kids);
        tree.nodes[v].end = static_cast<std::uint32_t>(tree.order.size());
        return v;
    }
};

}  // namespace

PartitionTree build_tree(std::vector<Point2> P, const TreeConfig& config) {
    if (config.leaf_size < 1) throw Error(ErrorCode::kInvalidArgument, "leaf_size must be >= 1");
    if (!(config.r >= 2.0)) throw Error(ErrorCode::kInvalidArgument, "r must be >= 2");
    PartitionTree tree;
    tree.config = config;
    tree.bbox = points_bbox(P);
    tree.points = std::move(P);
    tree.order.reserve(tree.points.size());
    std::vector<std::uint32_t> ids(tree.points.size());
    std::iota(ids.begin(), ids.end(), 0u);
    Builder{tree}.build(std::move(ids), ElementaryCell::from_box(tree.bbox), config.seed);
    return tree;
}

}  // namespace shallow
