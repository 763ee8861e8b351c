#include "shallow/sampling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "shallow/error.h"

namespace shallow {

std::vector<std::uint32_t> uniform_sample(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    if (k >= n) return all;
    std::vector<std::uint32_t> out;
    out.reserve(k);
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
    return out;
}

std::size_t shallow_net_size(double r, const NetParams& p) {
    if (!(r >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "net parameter r must be >= 1");
    if (!(p.q > 0.0 && p.q < 1.0)) throw Error(ErrorCode::kInvalidArgument, "q must lie in (0,1)");
    const double eps = 1.0 / r;
    const double size = (p.a / eps) * (p.delta_vc * std::log(1.0 / eps) + std::log(1.0 / p.q));
    return static_cast<std::size_t>(std::ceil(size - 1e-9));
}

ShallowNet draw_shallow_net(std::size_t n, double r, const NetParams& p, std::uint64_t seed) {
    ShallowNet net;
    net.eps = 1.0 / r;
    net.q = p.q;
    net.a = p.a;
    net.delta_vc = p.delta_vc;
    net.c = p.c;
    net.sample = uniform_sample(n, std::min(n, shallow_net_size(r, p)), seed);
    return net;
}

namespace {

std::size_t count_in(std::span<const Point2> P, const std::vector<std::uint32_t>* subset,
                     const Range& r) {
    std::size_t k = 0;
    if (subset) {
        for (std::uint32_t i : *subset) k += contains_point(r, P[i]) ? 1 : 0;
    } else {
        for (const Point2& p : P) k += contains_point(r, p) ? 1 : 0;
    }
    return k;
}

}  // namespace

NetReport verify_shallow_net(std::span<const Point2> P, const ShallowNet& net,
                             const std::vector<Range>& probes, double c) {
    NetReport rep;
    const double n = static_cast<double>(P.size());
    const double lg = std::log(1.0 / net.eps);
    for (const Range& r : probes) {
        const double x = static_cast<double>(count_in(P, nullptr, r));
        const double s = static_cast<double>(count_in(P, &net.sample, r));
        for (double t : {0.0, 1.0, 2.0, 4.0, 8.0}) {
            ++rep.checks;
            if (s <= t * lg && x > c * (t + 1.0) * net.eps * n) ++rep.violations_i;
            if (x <= t * net.eps * n && s > c * (t + 1.0) * lg) ++rep.violations_ii;
        }
    }
    return rep;
}

std::size_t nu_alpha_sample_size(double nu, double alpha, double q, double a, double delta_vc) {
    if (!(nu > 0.0 && nu <= 1.0 && alpha > 0.0 && alpha < 1.0 && q > 0.0 && q < 1.0))
        throw Error(ErrorCode::kInvalidArgument, "nu, alpha, q out of range");
    const double size = (a / (alpha * alpha * nu)) * (delta_vc * std::log(1.0 / nu) + std::log(1.0 / q));
    return static_cast<std::size_t>(std::ceil(size - 1e-9));
}

std::vector<std::uint32_t> draw_nu_alpha_sample(std::size_t n, double nu, double alpha, double q,
                                                double a, double delta_vc, std::uint64_t seed) {
    return uniform_sample(n, std::min(n, nu_alpha_sample_size(nu, alpha, q, a, delta_vc)), seed);
}

double d_nu(double r, double s, double nu) { return std::abs(r - s) / (r + s + nu); }

double nu_alpha_success_rate(std::span<const Point2> P, const std::vector<std::uint32_t>& sample,
                             const std::vector<Range>& probes, double nu, double alpha) {
    if (probes.empty() || P.empty() || sample.empty()) return 1.0;
    std::size_t ok = 0;
    for (const Range& r : probes) {
        const double x = static_cast<double>(count_in(P, nullptr, r)) / static_cast<double>(P.size());
        const double s = static_cast<double>(count_in(P, &sample, r)) / static_cast<double>(sample.size());
        ok += d_nu(x, s, nu) < alpha ? 1 : 0;
    }
    return static_cast<double>(ok) / static_cast<double>(probes.size());
}

}  // namespace shallow
