#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "shallow/decomposition.h"

using namespace shallow;

namespace {

std::vector<Range> random_ranges(std::mt19937_64& rng, int m, double scale) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Range> out;
    while (static_cast<int>(out.size()) < m) {
        switch (rng() % 3) {
            case 0: {
                const Point2 c{u(rng), u(rng)};
                const double th = kTwoPi * u(rng);
                const double s = scale * (0.3 + u(rng));
                auto corner = [&](double a) { return c + s * Point2{std::cos(th + a), std::sin(th + a)}; };
                out.push_back(FatTriangle::make(corner(0), corner(2.0 + 0.3 * u(rng)), corner(4.0 + 0.3 * u(rng)), 0.0));
                break;
            }
            case 1: {
                const Circle2 d{{u(rng), u(rng)}, scale * (0.3 + u(rng))};
                const double th = kTwoPi * u(rng);
                const Point2 on = d.center + (d.radius * (u(rng) - 0.5)) * Point2{std::cos(th), std::sin(th)};
                out.push_back(CircularCap{d, Line2::with_direction(on, th + kPi / 2)});
                break;
            }
            default: out.push_back(Disk{{{u(rng), u(rng)}, scale * (0.3 + u(rng))}});
        }
    }
    return out;
}

// Number of cells strictly containing p (with margin).
int cells_containing(const std::vector<ElementaryCell>& cells, Point2 p, double eps) {
    int k = 0;
    for (const ElementaryCell& c : cells) k += c.contains_strictly(p, eps) ? 1 : 0;
    return k;
}

double union_depth(const std::vector<Range>& rs, Point2 p) {
    double d = -1e300;
    for (const Range& r : rs) d = std::max(d, to_shape(r).depth(p));
    return d;
}

void check_tiling(const std::vector<Range>& rs, const ElementaryCell& clip,
                  const std::vector<ElementaryCell>& cells, std::uint64_t seed, int probes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Box b = clip.bounding_box();
    constexpr double kMargin = 1e-7;
    for (int i = 0; i < probes; ++i) {
        const Point2 p{b.xmin + u(rng) * b.width(), b.ymin + u(rng) * b.height()};
        if (!clip.contains_strictly(p, kMargin)) continue;
        const double d = union_depth(rs, p);
        // Stay away from cell walls: count with and without margin.
        const int loose = cells_containing(cells, p, -kMargin);
        const int tight = cells_containing(cells, p, kMargin);
        EXPECT_LE(tight, 1) << "overlap at " << p.x << "," << p.y;
        if (d < -kMargin) {
            EXPECT_GE(loose, 1) << "uncovered free point " << p.x << "," << p.y;
        } else if (d > kMargin) {
            EXPECT_EQ(tight, 0) << "cell inside union at " << p.x << "," << p.y;
        }
    }
}

// Independent all-pairs oracle built on contains_point over the Range API.
std::size_t naive_union_vertices(const std::vector<Range>& rs) {
    auto boundary = [](const Range& r, std::vector<Line2>& lines, std::vector<Circle2>& circles) {
        const ConvexShape s = to_shape(r);
        for (const Line2& l : s.halfplanes()) lines.push_back(l);
        if (s.disk) circles.push_back(*s.disk);
    };
    auto near_in = [](const Range& r, Point2 p) {
        return to_shape(r).depth(p) >= -1e-9;
    };
    auto on_union_boundary = [&](Point2 p, std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < rs.size(); ++k) {
            if (k == a || k == b) continue;
            if (to_shape(rs[k]).depth(p) > 1e-9) return false;
        }
        return near_in(rs[a], p) && near_in(rs[b], p);
    };
    std::vector<Point2> verts;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = i; j < rs.size(); ++j) {
            std::vector<Line2> li, lj;
            std::vector<Circle2> ci, cj;
            boundary(rs[i], li, ci);
            boundary(rs[j], lj, cj);
            std::vector<Point2> pts;
            if (i == j) {
                for (std::size_t u = 0; u < li.size(); ++u)
                    for (std::size_t v = u + 1; v < li.size(); ++v)
                        if (auto p = line_line_intersect(li[u], li[v])) pts.push_back(*p);
                for (const Line2& l : li)
                    for (const Circle2& c : ci)
                        for (Point2 p : line_circle_intersect(l, c).view()) pts.push_back(p);
            } else {
                for (const Line2& a : li)
                    for (const Line2& b : lj)
                        if (auto p = line_line_intersect(a, b)) pts.push_back(*p);
                for (const Line2& a : li)
                    for (const Circle2& c : cj)
                        for (Point2 p : line_circle_intersect(a, c).view()) pts.push_back(p);
                for (const Circle2& c : ci)
                    for (const Line2& b : lj)
                        for (Point2 p : line_circle_intersect(b, c).view()) pts.push_back(p);
                for (const Circle2& a : ci)
                    for (const Circle2& b : cj)
                        for (Point2 p : circle_circle_intersect(a, b).view()) pts.push_back(p);
            }
            for (Point2 p : pts)
                if (on_union_boundary(p, i, j)) verts.push_back(p);
        }
    }
    // Greedy dedup in lexicographic order, compared against every kept vertex.
    std::sort(verts.begin(), verts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point2> kept;
    for (Point2 p : verts) {
        bool dup = false;
        for (Point2 k : kept)
            if (std::abs(k.x - p.x) <= 1e-9 && std::abs(k.y - p.y) <= 1e-9) dup = true;
        if (!dup) kept.push_back(p);
    }
    return kept.size();
}

}  // namespace

TEST(Decompose, EmptyGivesClip) {
    const ElementaryCell clip = ElementaryCell::from_box(kUnitBox);
    const auto cells = union_complement_decompose(std::vector<Range>{}, clip);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].x_left, 0.0);
    EXPECT_EQ(cells[0].x_right, 1.0);
    EXPECT_EQ(cells[0].bottom, clip.bottom);
    EXPECT_EQ(cells[0].top, clip.top);
}

TEST(Decompose, TriangleInsideBox) {
    const ElementaryCell clip = ElementaryCell::from_box(kUnitBox);
    const std::vector<Range> rs{FatTriangle::make({0.2, 0.3}, {0.8, 0.25}, {0.5, 0.8}, 0.0)};
    const auto cells = union_complement_decompose(rs, clip);
    EXPECT_GE(cells.size(), 4u);
    EXPECT_LE(cells.size(), 6u);
    check_tiling(rs, clip, cells, 1, 10000);
}

TEST(Decompose, CoveringRangeGivesNothing) {
    const ElementaryCell clip = ElementaryCell::from_box(kUnitBox);
    const std::vector<Range> rs{Disk{{{0.5, 0.5}, 1.0}}};
    EXPECT_TRUE(union_complement_decompose(rs, clip).empty());
}

TEST(Decompose, RandomUnionsTileComplementProperty) {
    std::mt19937_64 rng(17);
    const ElementaryCell clip = ElementaryCell::from_box(kUnitBox);
    for (int trial = 0; trial < 12; ++trial) {
        const auto rs = random_ranges(rng, 4 + trial * 3, 0.15);
        const auto cells = union_complement_decompose(rs, clip);
        check_tiling(rs, clip, cells, 100 + trial, 2000);
    }
}

TEST(Decompose, ArcClipProperty) {
    // Decompose inside a cell bounded by circular arcs.
    ElementaryCell clip;
    clip.x_left = 0.2;
    clip.x_right = 0.8;
    clip.bottom = Curve::upper_arc({{0.5, -0.2}, 0.6});
    clip.top = Curve::lower_arc({{0.5, 1.3}, 0.7});
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        const auto rs = random_ranges(rng, 8, 0.12);
        check_tiling(rs, clip, union_complement_decompose(rs, clip), 200 + trial, 2000);
    }
}

TEST(UnionVertices, Examples) {
    EXPECT_EQ(union_boundary_vertices({Disk{{{0, 0}, 1}}, Disk{{{5, 0}, 1}}}), 0u);
    EXPECT_EQ(union_boundary_vertices({Disk{{{0, 0}, 1}}, Disk{{{1, 0}, 1}}}), 2u);
    // Nested disks: the inner one contributes nothing.
    EXPECT_EQ(union_boundary_vertices({Disk{{{0, 0}, 2}}, Disk{{{0.1, 0}, 1}}}), 0u);
    // A lone triangle has its three corners.
    EXPECT_EQ(union_boundary_vertices({FatTriangle::make({0, 0}, {1, 0}, {0, 1}, 0)}), 3u);
    // Two triangles sharing a corner: the shared corner counts once.
    EXPECT_EQ(union_boundary_vertices({FatTriangle::make({0, 0}, {1, 0}, {0, 1}, 0),
                                       FatTriangle::make({0, 0}, {-1, 0}, {0, -1}, 0)}),
              5u);
}

TEST(UnionVertices, MatchesAllPairsOracle) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const auto rs = random_ranges(rng, 3 + trial, 0.2);
        EXPECT_EQ(union_boundary_vertices(rs), naive_union_vertices(rs)) << "trial " << trial;
    }
}

TEST(WeightedRanges, LargeExponentsStayFinite) {
    WeightedRanges wr(std::vector<Range>(3, Disk{{{0, 0}, 1}}));
    wr.kappa = {5000, 5000, 4999};
    EXPECT_NEAR(wr.shifted_total(), 2.5, 1e-12);
    EXPECT_NEAR(wr.log2_total(), 5000 + std::log2(2.5), 1e-9);
}

TEST(WeightedSample, DistinctDeterministicAndBiased) {
    WeightedRanges wr(std::vector<Range>(40, Disk{{{0, 0}, 1}}));
    for (int i = 0; i < 20; ++i) wr.kappa[i] = 6;
    std::mt19937_64 a(5), b(5);
    const auto s1 = weighted_sample(wr, {}, 10, a);
    const auto s2 = weighted_sample(wr, {}, 10, b);
    EXPECT_EQ(s1, s2);
    std::vector<std::uint32_t> sorted = s1;
    EXPECT_TRUE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    int heavy = 0, total = 0;
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t)
        for (std::uint32_t id : weighted_sample(wr, {}, 5, rng)) {
            heavy += id < 20 ? 1 : 0;
            ++total;
        }
    EXPECT_GT(heavy, total * 9 / 10);
}

TEST(Cutting, SingleRange) {
    WeightedRanges wr({FatTriangle::make({0.2, 0.2}, {0.7, 0.3}, {0.4, 0.7}, 0)});
    const ElementaryCell clip = ElementaryCell::from_box(kUnitBox);
    const Cutting cut = shallow_cutting(wr, 1.0, clip, 1);
    EXPECT_TRUE(cut.compliant);
    for (std::size_t i = 0; i < cut.cells.size(); ++i) EXPECT_LE(cut.crossing_weight(wr, i), 1.0);
    check_tiling(wr.ranges, clip, cut.cells, 3, 5000);
}

TEST(Cutting, PropertiesOnRandomWeightedSets) {
    std::mt19937_64 rng(77);
    const ElementaryCell clip = ElementaryCell::from_box(kUnitBox);
    for (int trial = 0; trial < 4; ++trial) {
        WeightedRanges wr(random_ranges(rng, 120, 0.06));
        for (int& k : wr.kappa) k = static_cast<int>(rng() % 4);
        const double r = 6.0;
        const Cutting cut = shallow_cutting(wr, r, clip, 1000 + trial);
        std::vector<PreparedShape> prepared;
        for (const Range& g : wr.ranges) prepared.emplace_back(g);
        const double limit = wr.shifted_total() / r;
        for (std::size_t i = 0; i < cut.cells.size(); ++i) {
            // Conformance: stored list equals full recomputation.
            EXPECT_EQ(cut.crossing[i], crossing_list(prepared, cut.cells[i]));
            if (cut.compliant) EXPECT_LE(cut.crossing_weight(wr, i), limit * (1 + 1e-9));
        }
        EXPECT_TRUE(cut.compliant);
        // (i) complement of the union lies in the cells; (iii) the rest is
        // covered by the witnesses.
        std::vector<Range> witnesses;
        for (std::uint32_t id : cut.uncovered_witnesses) witnesses.push_back(wr.ranges[id]);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 1000; ++k) {
            const Point2 p{u(rng), u(rng)};
            const bool in_cells = cells_containing(cut.cells, p, -1e-7) > 0;
            if (union_depth(wr.ranges, p) < -1e-7) EXPECT_TRUE(in_cells);
            if (!in_cells) EXPECT_GE(union_depth(witnesses, p), -1e-7);
        }
        EXPECT_LE(cut.cells.size(), 8 * cut.initial_cells + 8);
    }
}

TEST(Cutting, BudgetExceededThrows) {
    std::mt19937_64 rng(4);
    WeightedRanges wr(random_ranges(rng, 50, 0.05));
    CuttingOptions opt;
    opt.cell_budget = 2;
    try {
        shallow_cutting(wr, 4.0, ElementaryCell::from_box(kUnitBox), 1, opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kCuttingSizeExceeded);
    }
}

TEST(CellsJson, FlattensArcs) {
    ElementaryCell c = ElementaryCell::from_box(kUnitBox);
    c.top = Curve::lower_arc({{0.5, 2.0}, 1.5});
    const std::string js = cells_to_json({c});
    EXPECT_NE(js.find("\"polygon\""), std::string::npos);
}
