#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "shallow/approx.h"
#include "shallow/workload.h"

using namespace shallow;

TEST(MinRankMle, RecoversSubsetSize) {
    const std::size_t n = 2000;
    std::mt19937_64 rng(1);
    for (std::size_t m : {1u, 5u, 40u, 600u, 2000u}) {
        std::vector<std::uint32_t> perm(n);
        std::vector<std::uint32_t> mins;
        for (int i = 0; i < 400; ++i) {
            std::iota(perm.begin(), perm.end(), 0u);
            std::shuffle(perm.begin(), perm.end(), rng);
            // Subset {0..m-1}: its min rank is the first position holding one of them.
            std::uint32_t r = 0;
            while (perm[r] >= m) ++r;
            mins.push_back(r);
        }
        const double est = min_rank_mle(n, mins);
        EXPECT_NEAR(est / static_cast<double>(m), 1.0, 0.15) << m;
    }
}

TEST(ApproxCount, SampleCountFormula) {
    ApproxParams p;
    p.delta = 0.25;
    EXPECT_EQ(approx_sample_count(1024, p), static_cast<std::size_t>(std::ceil(16 * std::log(1024.0))));
    p.c_a = 1e-6;
    EXPECT_EQ(approx_sample_count(1024, p), 1u);
    p.delta = 1.5;
    EXPECT_THROW(approx_sample_count(10, p), Error);
}

class ApproxFixture : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        TreeConfig cfg;
        cfg.family = Family::kCaps;
        cfg.seed = 3;
        tree_ = new PartitionTree(build_tree(generate_points(1024, Distribution::kUniform, 7), cfg));
    }
    static void TearDownTestSuite() { delete tree_; }
    static PartitionTree* tree_;
};
PartitionTree* ApproxFixture::tree_ = nullptr;

TEST_F(ApproxFixture, EmptyIsZeroAndFullIsClose) {
    const ApproxCounter ac(*tree_, ApproxParams{});
    std::mt19937_64 rng(2);
    int empties = 0;
    for (int k = 0; k < 300; ++k) {
        const Range q = random_cap_query(rng, tree_->bbox, kPi, 0.05);
        if (!brute_empty(tree_->points, q)) continue;
        ++empties;
        EXPECT_EQ(ac.count(q), 0u);
    }
    EXPECT_GT(empties, 10);
    const std::size_t t = ac.count(Disk{{{0.5, 0.5}, 10.0}});
    EXPECT_LE(t, 1024u);
    EXPECT_GE(t, 768u);
}

TEST_F(ApproxFixture, GuaranteeRateAndDeterminism) {
    const ApproxCounter ac(*tree_, ApproxParams{});
    const ApproxCounter again(*tree_, ApproxParams{});
    std::mt19937_64 rng(4);
    int total = 0, ok = 0;
    while (total < 200) {
        const Range q = random_cap_query(rng, tree_->bbox, kPi);
        const std::size_t m = brute_count(tree_->points, q);
        if (m == 0) continue;
        ++total;
        const std::size_t t = ac.count(q);
        EXPECT_EQ(t, again.count(q));
        if (t <= m && static_cast<double>(t) >= 0.75 * static_cast<double>(m)) ++ok;
    }
    EXPECT_GE(ok, 170) << ok << " of " << total;
    EXPECT_EQ(ac.stored_points(), ac.samples() * 1024);
}

TEST_F(ApproxFixture, MajorityVoteOvercounts) {
    ApproxParams p;
    p.method = ApproxMethod::kMajorityVote;
    const ApproxCounter ac(*tree_, p);
    std::mt19937_64 rng(5);
    int total = 0, over = 0;
    while (total < 50) {
        const Range q = random_cap_query(rng, tree_->bbox, kPi);
        const std::size_t m = brute_count(tree_->points, q);
        if (m == 0) continue;
        ++total;
        if (ac.count(q) > m) ++over;
    }
    EXPECT_GT(over, 40);
}
