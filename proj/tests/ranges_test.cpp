#include <gtest/gtest.h>

#include <random>

#include "shallow/ranges.h"

using namespace shallow;

namespace {

Range random_range(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (rng() % 4) {
        case 0: {
            for (;;) {
                Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
                if (std::abs(cross(b - a, c - a)) > 1e-2) return FatTriangle::make(a, b, c, 0.0);
            }
        }
        case 1: {
            const Circle2 d{{u(rng), u(rng)}, 0.05 + 0.4 * u(rng)};
            const double th = kTwoPi * u(rng);
            const Point2 on = d.center + (d.radius * (2 * u(rng) - 1)) * Point2{std::cos(th), std::sin(th)};
            return CircularCap{d, Line2::with_direction(on, th + kPi / 2)};
        }
        case 2: return Disk{{{u(rng), u(rng)}, 0.05 + 0.4 * u(rng)}};
        default: return Halfplane{Line2::with_direction({u(rng), u(rng)}, kTwoPi * u(rng))};
    }
}

ElementaryCell random_cell(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ElementaryCell c;
    double x0 = u(rng), x1 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    c.x_left = x0;
    c.x_right = x1 + 0.01;
    const double ym = u(rng);
    const Line2 lo = Line2::with_direction({0.5 * (x0 + x1), ym - 0.1}, (u(rng) - 0.5));
    const Line2 hi = Line2::with_direction({0.5 * (x0 + x1), ym + 0.1 + 0.3 * u(rng)}, (u(rng) - 0.5));
    c.bottom = Curve::of_line(lo.b() > 0 ? lo : lo.flipped());
    c.top = Curve::of_line(hi.b() > 0 ? hi : hi.flipped());
    if (rng() % 3 == 0) {
        const Circle2 circ{{0.5 * (x0 + x1), ym + 0.5}, 0.5 + (x1 - x0)};
        c.top = Curve::lower_arc(circ);
    }
    return c;
}

}  // namespace

TEST(ContainsPoint, Examples) {
    const Range t = FatTriangle::make({0, 0}, {4, 0}, {0, 4}, 0.0);
    EXPECT_TRUE(contains_point(t, {1, 1}));
    EXPECT_TRUE(contains_point(t, {0, 0}));
    const Range semi = CircularCap{{{0, 0}, 1.0}, Line2(0, 1, 0)};
    EXPECT_FALSE(contains_point(semi, {0, -0.5}));
    EXPECT_TRUE(contains_point(semi, {0, 0.5}));
}

TEST(ContainsPoint, CapIsDiskAndChordProperty) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    for (int i = 0; i < 200; ++i) {
        const Circle2 d{{u(rng), u(rng)}, 0.1 + 0.3 * std::abs(u(rng))};
        const Line2 ch = Line2::with_direction({u(rng), u(rng)}, kTwoPi * u(rng));
        const CircularCap cap{d, ch};
        for (int j = 0; j < 50; ++j) {
            const Point2 p{u(rng), u(rng)};
            EXPECT_EQ(contains_point(cap, p),
                      contains_point(Disk{d}, p) && contains_point(Halfplane{ch}, p));
        }
    }
}

TEST(CentralAngle, Examples) {
    EXPECT_NEAR(central_angle({{{0, 0}, 1.0}, Line2(0, 1, 0)}), kPi, 1e-12);
    // Center on the cap side at distance rho: the whole disk.
    EXPECT_NEAR(central_angle({{{0, 0}, 1.0}, Line2(0, 1, -1)}), kTwoPi, 1e-12);
    EXPECT_NEAR(central_angle({{{0, 0}, 2.0}, Line2(0, 1, -1)}), 4 * kPi / 3, 1e-12);
    try {
        central_angle({{{0, 0}, 1.0}, Line2(0, 1, 3)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kChordOutsideDisk);
    }
}

TEST(CentralAngle, MonotoneInOffsetProperty) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double s = -2.0 + 4.0 * i / 200.0;
        const double th = central_angle({{{0, 0}, 2.0}, Line2(0, 1, -s)});
        EXPECT_GE(th, prev - 1e-12);
        prev = th;
    }
}

TEST(MinInteriorAngle, Examples) {
    const double h = std::sqrt(3.0) / 2.0;
    EXPECT_NEAR(min_interior_angle(FatTriangle::make({0, 0}, {1, 0}, {0.5, h}, 0.0)), kPi / 3, 1e-12);
    EXPECT_NEAR(min_interior_angle(FatTriangle::make({0, 0}, {1, 0}, {0, 1}, 0.0)), kPi / 4, 1e-12);
    try {
        FatTriangle::make({0, 0}, {1, 1}, {2, 2}, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kDegenerateTriangle);
    }
}

TEST(RelateCell, Examples) {
    const Range big = FatTriangle::make({-10, -10}, {20, -10}, {0, 20}, 0.0);
    const ElementaryCell tiny = ElementaryCell::from_box({0.4, 0.4, 0.45, 0.45});
    EXPECT_EQ(relate_cell(big, tiny), CellRelation::kContains);
    const Range corner = FatTriangle::make({0, 0}, {0.1, 0}, {0, 0.1}, 0.0);
    const ElementaryCell far = ElementaryCell::from_box({0.9, 0.9, 1.0, 1.0});
    EXPECT_EQ(relate_cell(corner, far), CellRelation::kDisjoint);
    EXPECT_EQ(relate_cell(corner, far, Semantics::kOpen), CellRelation::kDisjoint);
}

TEST(RelateCell, AgreesWithSamplingOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int contains = 0, disjoint = 0;
    for (int it = 0; it < 600; ++it) {
        const Range r = random_range(rng);
        const ElementaryCell c = random_cell(rng);
        const CellRelation rel = relate_cell(r, c);
        int in = 0, total = 0;
        for (int k = 0; k < 1000; ++k) {
            const double x = c.x_left + u(rng) * (c.x_right - c.x_left);
            const double yb = c.bottom.y_at(x), yt = c.top.y_at(x);
            if (yt < yb) continue;
            const Point2 p{x, yb + u(rng) * (yt - yb)};
            ++total;
            in += contains_point(r, p) ? 1 : 0;
        }
        if (total == 0) continue;
        if (rel == CellRelation::kContains) {
            ++contains;
            EXPECT_EQ(in, total);
        } else if (rel == CellRelation::kDisjoint) {
            ++disjoint;
            EXPECT_EQ(in, 0);
        } else {
            // Crosses is allowed to be conservative, but a clear mix must be Crosses.
            SUCCEED();
        }
        if (in > 0 && in < total) EXPECT_EQ(rel, CellRelation::kCrosses);
    }
    EXPECT_GT(contains, 10);
    EXPECT_GT(disjoint, 10);
}

TEST(RelateCell, ClosedNeverContradictsOpen) {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 1000; ++it) {
        const Range r = random_range(rng);
        const ElementaryCell c = random_cell(rng);
        const CellRelation closed = relate_cell(r, c, Semantics::kClosed);
        const CellRelation open = relate_cell(r, c, Semantics::kOpen);
        if (closed == CellRelation::kContains) EXPECT_EQ(open, CellRelation::kContains);
        if (closed == CellRelation::kDisjoint) EXPECT_EQ(open, CellRelation::kDisjoint);
    }
}

TEST(RelateCell, TouchingIsOpenDisjoint) {
    // Cell [0.5,1]x[0,1] touches the halfplane x <= 0.5 only along its left side.
    const Range h = Halfplane{Line2(-1, 0, -0.5)};
    const ElementaryCell c = ElementaryCell::from_box({0.5, 0.0, 1.0, 1.0});
    EXPECT_EQ(relate_cell(h, c, Semantics::kOpen), CellRelation::kDisjoint);
    EXPECT_EQ(relate_cell(h, c, Semantics::kClosed), CellRelation::kCrosses);
}
