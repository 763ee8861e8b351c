#include <set>
#include <gtest/gtest.h>

#include <random>

#include "shallow/canonize.h"

using namespace shallow;

namespace {

std::vector<Point2> uniform_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> P(n);
    for (Point2& p : P) p = {u(rng), u(rng)};
    return P;
}

const Box kWorld{-1.0, -1.0, 2.0, 2.0};

// Uniform points of the range (by rejection in its bounding box) that no
// output range covers, up to a small tolerance.
int uncovered_samples(const Range& q, const Covering& cv, std::mt19937_64& rng, int samples) {
    std::vector<ConvexShape> shapes;
    for (const Range& r : cv.ranges) shapes.push_back(to_shape(r));
    const ConvexShape qs = to_shape(q);
    const Box b = range_bounding_box(q, kWorld);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0, got = 0;
    for (int it = 0; got < samples && it < samples * 200; ++it) {
        const Point2 p{b.xmin + u(rng) * b.width(), b.ymin + u(rng) * b.height()};
        if (qs.depth(p) < 0) continue;
        ++got;
        bool ok = false;
        for (const ConvexShape& s : shapes)
            if (s.depth(p) >= -1e-9) ok = true;
        bad += ok ? 0 : 1;
    }
    return bad;
}

}  // namespace

TEST(OrientationSet, SizeForSixtyDegrees) {
    const OrientationSet D = OrientationSet::make(kPi / 3);
    EXPECT_EQ(D.thetas.size(), 25u);
    for (std::size_t k = 1; k < D.thetas.size(); ++k) EXPECT_GT(D.thetas[k], D.thetas[k - 1]);
    EXPECT_NEAR(D.thetas.back(), kTwoPi, 1e-12);
}

TEST(CanonicalLines, Counts) {
    const OrientationSet D = OrientationSet::make(kPi / 3);
    const auto N5 = uniform_points(5, 1);
    EXPECT_EQ(canonical_lines(N5, D).size(), 135u);
    const auto N1 = uniform_points(1, 2);
    EXPECT_EQ(canonical_lines(N1, D).size(), D.thetas.size());
    for (const CanonicalLine& l : canonical_lines(N5, D)) {
        EXPECT_NEAR(l.line.signed_dist(N5[l.i]), 0.0, 1e-12);
        if (l.kind == CanonicalLine::Kind::kTwoPoints) {
            EXPECT_LT(l.i, l.j);
            EXPECT_NEAR(l.line.signed_dist(N5[l.j]), 0.0, 1e-12);
        }
    }
}

TEST(CoverTriangle, EmptyNetGivesBbox) {
    const OrientationSet D = OrientationSet::make(kPi / 6);
    const FatTriangle t = FatTriangle::make({0.2, 0.2}, {0.6, 0.2}, {0.4, 0.6}, kPi / 6);
    const Covering cv = cover_triangle(t, {}, D, kWorld);
    ASSERT_EQ(cv.ranges.size(), 1u);
    ASSERT_TRUE(std::holds_alternative<ClippedWedge>(cv.ranges[0]));
    EXPECT_TRUE(std::get<ClippedWedge>(cv.ranges[0]).sides.empty());
}

TEST(CoverTriangle, RejectsNonEmpty) {
    const OrientationSet D = OrientationSet::make(kPi / 6);
    const std::vector<Point2> N{{0.4, 0.3}};
    const FatTriangle t = FatTriangle::make({0.2, 0.2}, {0.6, 0.2}, {0.4, 0.6}, kPi / 6);
    try {
        cover_triangle(t, N, D, kWorld);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotNEmpty);
    }
}

TEST(CoverTriangle, CoversAndStaysEmptyProperty) {
    const double alpha = kPi / 6;
    const OrientationSet D = OrientationSet::make(alpha);
    std::mt19937_64 rng(5);
    double worst_angle = kPi;
    for (int trial = 0; trial < 300; ++trial) {
        const auto N = uniform_points(20 + trial % 60, 100 + trial);
        FatTriangle t;
        if (!random_empty_triangle(N, alpha, kUnitBox, rng, t)) continue;
        const Covering cv = cover_triangle(t, N, D, kWorld);
        EXPECT_GE(cv.ranges.size(), 1u);
        EXPECT_LE(cv.ranges.size(), 8u);
        for (const Range& r : cv.ranges) {
            EXPECT_TRUE(openly_empty(r, N));
            if (const auto* ft = std::get_if<FatTriangle>(&r)) worst_angle = std::min(worst_angle, min_interior_angle(*ft));
        }
        EXPECT_EQ(uncovered_samples(t, cv, rng, 200), 0) << "trial " << trial;
    }
    EXPECT_GE(worst_angle, alpha / 2 - 1e-9);
}

TEST(CoverTriangle, ReportingKeepsInteriorSubset) {
    const double alpha = kPi / 6;
    const OrientationSet D = OrientationSet::make(alpha);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto N = uniform_points(60, 300 + trial);
        FatTriangle t;
        if (!random_empty_triangle(N, alpha, kUnitBox, rng, t, 0.5, 4)) continue;
        std::vector<bool> inside(N.size());
        for (std::size_t k = 0; k < N.size(); ++k) inside[k] = contains_point_strictly(t, N[k], 1e-9);
        const Covering cv = cover_triangle(t, N, D, kWorld, CoverMode::kReporting);
        EXPECT_LE(cv.ranges.size(), 8u);
        // Interior points stay in the closed range (a rotation may stop on
        // one); no new point enters the open range.
        for (const Range& r : cv.ranges) {
            const ConvexShape s = to_shape(r);
            for (std::size_t k = 0; k < N.size(); ++k) {
                if (inside[k]) EXPECT_GE(s.depth(N[k]), -1e-9) << "trial " << trial;
                else EXPECT_LE(s.depth(N[k]), 1e-9) << "trial " << trial;
            }
        }
        EXPECT_EQ(uncovered_samples(t, cv, rng, 200), 0);
    }
}

TEST(CoverCap, EmptyNetGivesBbox) {
    const OrientationSet D = OrientationSet::make(kPi / 6);
    const CircularCap c{{{0.5, 0.5}, 0.2}, Line2(0, 1, 0.5)};
    const Covering cv = cover_cap(c, {}, D, kWorld);
    ASSERT_EQ(cv.ranges.size(), 1u);
}

TEST(CoverCap, FullDiskBranchAtMostThree) {
    const OrientationSet D = OrientationSet::make(kPi / 6);
    std::mt19937_64 rng(12);
    int branch = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto N = uniform_points(30, 500 + trial);
        CircularCap c;
        if (!random_empty_cap(N, kPi, kUnitBox, rng, c)) continue;
        // Push the chord past the disk: the translation leaves the disk at once.
        c.chord = c.chord.shifted(-2 * c.disk.radius);
        if (!openly_empty(c, N)) continue;
        ++branch;
        const Covering cv = cover_cap(c, N, D, kWorld);
        EXPECT_LE(cv.ranges.size(), 3u);
        for (const Range& r : cv.ranges) EXPECT_TRUE(openly_empty(r, N));
        for (std::size_t k = 0; k < cv.ranges.size(); ++k) {
            const Provenance& pv = cv.provenance[k];
            if (pv.kind == "disk:three") EXPECT_EQ(pv.points.size(), 3u);
            if (pv.kind == "disk:diametric") {
                const Circle2 d = std::get<Disk>(cv.ranges[k]).circle;
                EXPECT_NEAR(dist(N[pv.points[0]], N[pv.points[1]]), 2 * d.radius, 1e-9);
            }
        }
        EXPECT_EQ(uncovered_samples(Disk{c.disk}, cv, rng, 200), 0) << "trial " << trial;
    }
    EXPECT_GT(branch, 100);
}

TEST(CoverCap, CoversAndStaysEmptyProperty) {
    const OrientationSet D = OrientationSet::make(kPi / 6);
    std::mt19937_64 rng(21);
    CapParams params;
    for (int trial = 0; trial < 300; ++trial) {
        const auto N = uniform_points(20 + trial % 60, 900 + trial);
        CircularCap c;
        if (!random_empty_cap(N, params.beta_min, kUnitBox, rng, c)) continue;
        const Covering cv = cover_cap(c, N, D, kWorld, params);
        EXPECT_GE(cv.ranges.size(), 1u);
        EXPECT_LE(cv.ranges.size(), 8u);
        for (const Range& r : cv.ranges) EXPECT_TRUE(openly_empty(r, N)) << "trial " << trial;
        EXPECT_EQ(uncovered_samples(c, cv, rng, 200), 0) << "trial " << trial;
    }
}

TEST(Enumerate, EmptyNetGivesBbox) {
    const OrientationSet D = OrientationSet::make(kPi / 3);
    const TestSet tt = enumerate_canonical_triangles({}, kPi / 3, D, kWorld);
    ASSERT_EQ(tt.size(), 1u);
    EXPECT_EQ(tt.provenance[0].kind, "bbox");
    const TestSet tc = enumerate_canonical_caps({}, D, CapParams{}, kWorld);
    ASSERT_EQ(tc.size(), 1u);
    EXPECT_EQ(tc.provenance[0].kind, "bbox");
}

TEST(Enumerate, MembersAreEmptyAndFat) {
    const OrientationSet D = OrientationSet::make(kPi / 3);
    const auto N = uniform_points(6, 77);
    const TestSet tt = enumerate_canonical_triangles(N, kPi / 3, D, kWorld);
    EXPECT_GT(tt.size(), 0u);
    for (const Range& r : tt.ranges) {
        EXPECT_TRUE(openly_empty(r, N));
        if (const auto* f = std::get_if<FatTriangle>(&r)) EXPECT_GE(min_interior_angle(*f), kPi / 6 - 1e-9);
    }
    const TestSet tc = enumerate_canonical_caps(N, D, CapParams{}, kWorld);
    EXPECT_GT(tc.size(), 0u);
    for (const Range& r : tc.ranges) EXPECT_TRUE(openly_empty(r, N));
}

TEST(Enumerate, CapCoversDrawFromEnumeration) {
    const OrientationSet D = OrientationSet::make(kPi / 3);
    std::mt19937_64 rng(5);
    CapParams params;
    int checked = 0, missing = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto N = uniform_points(6, 1300 + trial);
        const TestSet tc = enumerate_canonical_caps(N, D, params, kWorld);
        std::set<std::string> keys;
        for (const Provenance& pv : tc.provenance) keys.insert(pv.key());
        CircularCap c;
        if (!random_empty_cap(N, params.beta_min, kUnitBox, rng, c)) continue;
        const Covering cv = cover_cap(c, N, D, kWorld, params);
        for (const Provenance& pv : cv.provenance) {
            ++checked;
            if (!keys.count(pv.key())) ++missing;
        }
    }
    EXPECT_GT(checked, 0);
    EXPECT_LE(missing, checked / 20) << missing << " of " << checked;
}

TEST(Enumerate, BudgetTruncates) {
    const OrientationSet D = OrientationSet::make(kPi / 3);
    const auto N = uniform_points(8, 3);
    EnumerationOptions opt;
    opt.budget = 10;
    const TestSet ts = enumerate_canonical_triangles(N, kPi / 3, D, kWorld, opt);
    EXPECT_EQ(ts.size(), 10u);
    EXPECT_TRUE(ts.truncated);
    EXPECT_GT(ts.enumerated, 10u);
}

TEST(TestSetJson, RoundTrip) {
    const auto N = uniform_points(40, 9);
    SampledOptions opt;
    opt.budget = 64;
    for (Family fam : {Family::kTriangles, Family::kCaps}) {
        const TestSet ts = sampled_test_set(fam, N, kPi / 3, CapParams{}, kWorld, opt);
        const TestSet back = test_set_from_json(test_set_to_json(ts));
        ASSERT_EQ(back.size(), ts.size());
        EXPECT_EQ(back.family, ts.family);
        EXPECT_EQ(back.net_points.size(), ts.net_points.size());
        for (std::size_t k = 0; k < ts.size(); ++k) EXPECT_EQ(back.provenance[k].key(), ts.provenance[k].key());
        EXPECT_EQ(test_set_to_json(back), test_set_to_json(ts));
    }
    EXPECT_THROW(test_set_from_json("{\"family\": 3}"), Error);
}

TEST(SampledTestSet, MembersEmptyAndDeduplicated) {
    const auto N = uniform_points(60, 10);
    SampledOptions opt;
    opt.budget = 128;
    for (Family fam : {Family::kTriangles, Family::kCaps}) {
        const TestSet ts = sampled_test_set(fam, N, kPi / 3, CapParams{}, kWorld, opt);
        EXPECT_GT(ts.size(), 0u);
        EXPECT_LE(ts.size(), 128u);
        std::set<std::string> keys;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            EXPECT_TRUE(openly_empty(ts.ranges[k], N));
            keys.insert(ts.provenance[k].key());
        }
        EXPECT_EQ(keys.size(), ts.size());
    }
}
