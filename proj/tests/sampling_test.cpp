#include <gtest/gtest.h>

#include <random>

#include "shallow/sampling.h"

using namespace shallow;

namespace {

std::vector<Point2> uniform_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> P(n);
    for (Point2& p : P) p = {u(rng), u(rng)};
    return P;
}

// Disks, caps, and fat triangles of widely varying size.
std::vector<Range> probe_ranges(std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Range> out;
    for (std::size_t i = 0; i < k; ++i) {
        const Point2 c{u(rng), u(rng)};
        const double s = 0.5 * std::pow(u(rng), 2.0);
        if (i % 3 == 0) {
            out.push_back(Disk{{c, s}});
        } else if (i % 3 == 1) {
            const double th = kTwoPi * u(rng);
            out.push_back(CircularCap{{c, s}, Line2::with_direction(c, th)});
        } else {
            const double th = kTwoPi * u(rng);
            auto v = [&](double a) { return c + s * Point2{std::cos(th + a), std::sin(th + a)}; };
            out.push_back(FatTriangle::make(v(0), v(kTwoPi / 3), v(2 * kTwoPi / 3), kPi / 3));
        }
    }
    return out;
}

}  // namespace

TEST(ShallowNet, SizeExamples) {
    NetParams p;
    p.q = 0.5;
    p.a = 1.0;
    p.delta_vc = 2.0;
    EXPECT_EQ(shallow_net_size(8.0, p), 39u);
    EXPECT_EQ(shallow_net_size(1.0, p), static_cast<std::size_t>(std::ceil(std::log(2.0))));
    EXPECT_EQ(draw_shallow_net(20, 8.0, p, 1).sample.size(), 20u);
}

TEST(ShallowNet, DeterministicPerSeed) {
    NetParams p;
    EXPECT_EQ(draw_shallow_net(5000, 8.0, p, 42).sample, draw_shallow_net(5000, 8.0, p, 42).sample);
    EXPECT_NE(draw_shallow_net(5000, 8.0, p, 42).sample, draw_shallow_net(5000, 8.0, p, 43).sample);
}

TEST(ShallowNet, FullSampleHasNoViolationsOfFirstProperty) {
    const auto P = uniform_points(300, 3);
    ShallowNet net;
    net.eps = 1.0 / 8.0;
    for (std::uint32_t i = 0; i < P.size(); ++i) net.sample.push_back(i);
    EXPECT_EQ(verify_shallow_net(P, net, probe_ranges(100, 4), 1.0).violations_i, 0u);
}

TEST(ShallowNet, EmptyProbeHoldsAtAnyConstant) {
    const auto P = uniform_points(200, 5);
    const ShallowNet net = draw_shallow_net(P.size(), 4.0, {}, 6);
    const std::vector<Range> empty{Disk{{{5.0, 5.0}, 0.1}}};
    const NetReport rep = verify_shallow_net(P, net, empty, 0.0);
    EXPECT_EQ(rep.violations_i, 0u);
    EXPECT_EQ(rep.violations_ii, 0u);
}

TEST(ShallowNet, MonteCarloViolationRateBelowQ) {
    NetParams p;
    p.q = 0.1;
    p.delta_vc = 2.0;
    const auto P = uniform_points(4000, 7);
    const auto probes = probe_ranges(300, 8);
    int failures = 0;
    constexpr int kSeeds = 20;
    for (int s = 0; s < kSeeds; ++s) {
        const ShallowNet net = draw_shallow_net(P.size(), 16.0, p, 100 + s);
        const NetReport rep = verify_shallow_net(P, net, probes, 4.0);
        failures += (rep.violations_i + rep.violations_ii) > 0 ? 1 : 0;
    }
    EXPECT_LE(failures, static_cast<int>(p.q * kSeeds));
}

TEST(ShallowNet, ImpliesEpsilonNetProperty) {
    NetParams p;
    p.delta_vc = 2.0;
    const auto P = uniform_points(3000, 9);
    const ShallowNet net = draw_shallow_net(P.size(), 16.0, p, 10);
    for (const Range& r : probe_ranges(400, 11)) {
        std::size_t in = 0, hit = 0;
        for (const Point2& q : P) in += contains_point(r, q) ? 1 : 0;
        for (std::uint32_t i : net.sample) hit += contains_point(r, P[i]) ? 1 : 0;
        if (in > p.c * net.eps * P.size()) EXPECT_GT(hit, 0u);
    }
}

TEST(NuAlpha, Examples) {
    EXPECT_EQ(d_nu(0.3, 0.3, 0.1), 0.0);
    EXPECT_EQ(nu_alpha_sample_size(1.0, 0.5, 0.1, 1.0, 6.0),
              static_cast<std::size_t>(std::ceil(4.0 * std::log(10.0))));
}

TEST(NuAlpha, EmpiricalSuccessRate) {
    const auto P = uniform_points(4000, 12);
    const auto probes = probe_ranges(200, 13);
    const double nu = 0.1, alpha = 0.3, q = 0.1;
    int good = 0;
    constexpr int kSeeds = 20;
    for (int s = 0; s < kSeeds; ++s) {
        const auto S = draw_nu_alpha_sample(P.size(), nu, alpha, q, 1.0, 2.0, 300 + s);
        good += nu_alpha_success_rate(P, S, probes, nu, alpha) == 1.0 ? 1 : 0;
    }
    EXPECT_GE(good, static_cast<int>((1.0 - q) * kSeeds));
}
