#pragma once

// Uniform random samples sized for the shallow epsilon-net and (nu, alpha)
// sample guarantees, with empirical verifiers for both.

#include <cstdint>
#include <span>
#include <vector>

#include "shallow/ranges.h"

namespace shallow {

struct NetParams {
    double q = 0.1;         // failure probability
    double a = 1.0;         // sizing constant
    double delta_vc = 6.0;  // VC-dimension surrogate
    double c = 4.0;         // property constant
};

struct ShallowNet {
    std::vector<std::uint32_t> sample;  // sorted indices into P
    double eps = 1.0;
    double q = 0.1;
    double a = 1.0;
    double delta_vc = 6.0;
    double c = 4.0;
};

/// ceil((a/eps) * (delta_vc*ln(1/eps) + ln(1/q))), eps = 1/r.
std::size_t shallow_net_size(double r, const NetParams& p);

/// Uniform sample without replacement, capped at n.
ShallowNet draw_shallow_net(std::size_t n, double r, const NetParams& p, std::uint64_t seed);

struct NetReport {
    std::size_t violations_i = 0;
    std::size_t violations_ii = 0;
    std::size_t checks = 0;  // (probe, t) pairs examined
};

/// Checks both net properties for every probe and t in {0, 1, 2, 4, 8}:
///  (i)  |N∩R| <= t ln(1/eps)  implies  |P∩R| <= c (t+1) eps |P|
///  (ii) |P∩R| <= t eps |P|    implies  |N∩R| <= c (t+1) ln(1/eps)
NetReport verify_shallow_net(std::span<const Point2> P, const ShallowNet& net,
                             const std::vector<Range>& probes, double c);

/// ceil((a / (alpha^2 nu)) * (delta_vc ln(1/nu) + ln(1/q))).
std::size_t nu_alpha_sample_size(double nu, double alpha, double q, double a, double delta_vc);

std::vector<std::uint32_t> draw_nu_alpha_sample(std::size_t n, double nu, double alpha, double q,
                                                double a, double delta_vc, std::uint64_t seed);

/// |r - s| / (r + s + nu).
double d_nu(double r, double s, double nu);

/// Fraction of probes with d_nu(|P∩R|/|P|, |N∩R|/|N|) < alpha.
double nu_alpha_success_rate(std::span<const Point2> P, const std::vector<std::uint32_t>& sample,
                             const std::vector<Range>& probes, double nu, double alpha);

/// k distinct indices of [0, n), uniform, sorted.
std::vector<std::uint32_t> uniform_sample(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace shallow
