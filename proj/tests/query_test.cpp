#include <gtest/gtest.h>

#include <random>

#include "shallow/query.h"
#include "shallow/workload.h"

using namespace shallow;

namespace {

PartitionTree make_tree(std::size_t n, Family fam, CoverMode mode, Distribution d, std::uint64_t seed) {
    TreeConfig cfg;
    cfg.family = fam;
    cfg.mode = mode;
    cfg.leaf_size = 16;
    cfg.seed = seed;
    return build_tree(generate_points(n, d, seed), cfg);
}

Range random_query(const PartitionTree& t, std::mt19937_64& rng) {
    if (t.config.family == Family::kTriangles) return random_fat_triangle(rng, t.bbox, t.config.alpha);
    return random_cap_query(rng, t.bbox, t.config.cap.beta_min);
}

}  // namespace

TEST(Oracle, Definitions) {
    const auto P = generate_points(200, Distribution::kUniform, 1);
    const Range all = Halfplane{Line2(0, 1, -5)};
    EXPECT_EQ(brute_count(P, all), P.size());
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const Range r = random_cap_query(rng, kUnitBox, kPi);
        const auto rep = brute_report(P, r);
        EXPECT_EQ(brute_empty(P, r), brute_count(P, r) == 0);
        EXPECT_EQ(rep.size(), brute_count(P, r));
        EXPECT_TRUE(std::is_sorted(rep.begin(), rep.end()));
        for (std::uint32_t i : rep) EXPECT_TRUE(contains_point(r, P[i]));
    }
    const std::vector<Point2> two{{0, 1}, {3, 1}};
    const auto nb = brute_nearest_above(two, {0, 0.5}, Line2(0, 1, 0));
    ASSERT_TRUE(nb);
    EXPECT_EQ(nb->index, 0u);
    EXPECT_DOUBLE_EQ(nb->distance, 0.5);
    EXPECT_FALSE(brute_nearest_above(two, {0, 0.5}, Line2(0, -1, 0)));
}

TEST(Workload, QueriesRespectFamilies) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 500; ++k) {
        EXPECT_GE(min_interior_angle(random_fat_triangle(rng, kUnitBox, kPi / 6)), kPi / 6);
        EXPECT_GE(central_angle(random_cap_query(rng, kUnitBox, kPi)), kPi - 1e-12);
    }
    for (Distribution d : {Distribution::kUniform, Distribution::kGaussian, Distribution::kClustered}) {
        const auto P = generate_points(300, d, 4);
        EXPECT_EQ(P.size(), 300u);
        for (const Point2& p : P) EXPECT_TRUE(kUnitBox.contains(p));
        EXPECT_EQ(P, generate_points(300, d, 4));
    }
}

TEST(Query, TrivialCases) {
    const PartitionTree t = make_tree(300, Family::kCaps, CoverMode::kEmptiness, Distribution::kUniform, 1);
    QueryStats st;
    const Range big = Disk{{{0.5, 0.5}, 5.0}};
    EXPECT_FALSE(emptiness(t, big, &st));
    EXPECT_EQ(st.nodes_visited, 1u);
    EXPECT_EQ(report(t, big).size(), 300u);
    st = {};
    const Range far = Disk{{{10, 10}, 1.0}};
    EXPECT_TRUE(emptiness(t, far, &st));
    EXPECT_EQ(st.nodes_visited, 1u);
    EXPECT_TRUE(report(t, far).empty());
}

TEST(Query, FamilyMismatch) {
    const PartitionTree tri = make_tree(100, Family::kTriangles, CoverMode::kEmptiness, Distribution::kUniform, 1);
    const PartitionTree cap = make_tree(100, Family::kCaps, CoverMode::kEmptiness, Distribution::kUniform, 1);
    const Range thin = FatTriangle::make({0, 0}, {1, 0}, {0.5, 0.05}, 0.0);
    const Range small_cap = CircularCap{{{0.5, 0.5}, 0.2}, Line2(0, 1, 0.6)};
    EXPECT_THROW(emptiness(tri, thin), Error);
    EXPECT_THROW(emptiness(tri, small_cap), Error);
    EXPECT_THROW(emptiness(cap, small_cap), Error);
    EXPECT_THROW(report(cap, thin), Error);
    try {
        emptiness(cap, small_cap);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kFamilyMismatch);
    }
    EXPECT_THROW(nearest_above_line(tri, {0.5, 0.5}, Line2(0, 1, 0)), Error);
    EXPECT_THROW(nearest_above_line(cap, {0.5, -0.5}, Line2(0, 1, 0)), Error);
}

TEST(Query, MatchesOracleAcrossThresholds) {
    for (Family fam : {Family::kTriangles, Family::kCaps}) {
        for (CoverMode mode : {CoverMode::kEmptiness, CoverMode::kReporting}) {
            for (Distribution d : {Distribution::kUniform, Distribution::kClustered}) {
                const PartitionTree t = make_tree(700, fam, mode, d, 9);
                std::mt19937_64 rng(10);
                for (int k = 0; k < 150; ++k) {
                    const Range q = random_query(t, rng);
                    const bool e = brute_empty(t.points, q);
                    const auto rep = brute_report(t.points, q);
                    for (double th : {0.0, 1.0, 8.0, kNoThreshold}) {
                        QueryOptions opt;
                        opt.kappa_thresh = th;
                        ASSERT_EQ(emptiness(t, q, nullptr, opt), e) << "query " << k << " thresh " << th;
                        ASSERT_EQ(report(t, q, nullptr, opt), rep) << "query " << k << " thresh " << th;
                    }
                }
            }
        }
    }
}

TEST(Query, ThresholdTradesVisitsForFallbacks) {
    const PartitionTree t = make_tree(1000, Family::kCaps, CoverMode::kReporting, Distribution::kUniform, 2);
    std::mt19937_64 rng(11);
    QueryStats low, high;
    for (int k = 0; k < 100; ++k) {
        const Range q = random_query(t, rng);
        QueryOptions o1;
        o1.kappa_thresh = 1.0;
        report(t, q, &low, o1);
        QueryOptions o2;
        o2.kappa_thresh = kNoThreshold;
        report(t, q, &high, o2);
    }
    EXPECT_GT(low.fallbacks, 0u);
    EXPECT_EQ(high.fallbacks, 0u);
    EXPECT_GT(high.nodes_visited, 0u);
}

TEST(Nearest, ExampleAndEmpty) {
    TreeConfig cfg;
    cfg.family = Family::kCaps;
    cfg.leaf_size = 1;
    const PartitionTree t = build_tree({{0, 1}, {3, 1}}, cfg);
    const auto nb = nearest_above_line(t, {0, 0.5}, Line2(0, 1, 0));
    ASSERT_TRUE(nb);
    EXPECT_EQ(nb->index, 0u);
    EXPECT_NEAR(nb->distance, 0.5, 1e-12);
    EXPECT_FALSE(nearest_above_line(t, {0, 2}, Line2(0, 1, 1.5)));
}

TEST(Nearest, MatchesOracle) {
    const PartitionTree t = make_tree(800, Family::kCaps, CoverMode::kReporting, Distribution::kUniform, 4);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int nonempty = 0;
    for (int k = 0; k < 200; ++k) {
        const double phi = kTwoPi * u(rng);
        const Point2 q{u(rng), u(rng)};
        const Point2 n{std::cos(phi), std::sin(phi)};
        const Line2 line(n.x, n.y, dot(n, q) - 0.3 * u(rng));
        const auto want = brute_nearest_above(t.points, q, line);
        const auto got = nearest_above_line(t, q, line);
        ASSERT_EQ(got.has_value(), want.has_value()) << k;
        if (!want) continue;
        ++nonempty;
        EXPECT_NEAR(got->distance, want->distance, 1e-9) << k;
        EXPECT_EQ(got->index, want->index) << k;
    }
    EXPECT_GT(nonempty, 150);
}
