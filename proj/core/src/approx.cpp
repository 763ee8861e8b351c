#include "shallow/approx.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "shallow/error.h"

namespace shallow {

namespace {

double digamma(double x) {
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132))));
}

}  // namespace

std::size_t approx_sample_count(std::size_t n, const ApproxParams& p) {
    if (!(p.delta > 0 && p.delta < 1)) throw Error(ErrorCode::kInvalidArgument, "delta must be in (0, 1)");
    const double ln_n = std::log(std::max<std::size_t>(n, 2));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p.c_a * ln_n / (p.delta * p.delta))));
}

double min_rank_mle(std::size_t n, const std::vector<std::uint32_t>& min_ranks) {
    if (min_ranks.empty() || n == 0) return 0.0;
    const double s = static_cast<double>(min_ranks.size());
    const double N = static_cast<double>(n);
    const double rmax = *std::max_element(min_ranks.begin(), min_ranks.end());
    // Score s/m - sum_i (H(n-m) - H(n-m-R_i)) is decreasing in m on [1, n - max R].
    auto score = [&](double m) {
        double acc = s / m;
        const double psi0 = digamma(N - m + 1);
        for (std::uint32_t r : min_ranks) acc -= psi0 - digamma(N - m - r + 1);
        return acc;
    };
    double lo = 1.0, hi = N - rmax;
    if (hi <= lo) return std::max(1.0, hi);
    if (score(hi) >= 0) return hi;
    if (score(lo) <= 0) return lo;
    for (int it = 0; it < 100 && hi - lo > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (score(mid) > 0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

ApproxCounter::ApproxCounter(const PartitionTree& tree, const ApproxParams& params)
    : tree_(tree), params_(params) {
    const std::size_t n = tree.points.size();
    const std::size_t s = approx_sample_count(n, params);
    ranks_.resize(s);
    node_min_.resize(s);
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < s; ++i) {
        std::mt19937_64 rng(params.seed * 0x9E3779B97F4A7C15ULL + i);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::uint32_t>& rank = ranks_[i];
        rank.resize(n);
        for (std::size_t k = 0; k < n; ++k) rank[perm[k]] = static_cast<std::uint32_t>(k);
        std::vector<std::uint32_t>& mins = node_min_[i];
        mins.assign(tree.nodes.size(), std::numeric_limits<std::uint32_t>::max());
        // Preorder puts children after parents, so a reverse pass sees children first.
        for (std::size_t v = tree.nodes.size(); v-- > 0;) {
            const TreeNode& node = tree.nodes[v];
            if (node.is_leaf()) {
                for (std::uint32_t k : tree.node_points(node)) mins[v] = std::min(mins[v], rank[k]);
            } else {
                for (std::uint32_t c : node.children) mins[v] = std::min(mins[v], mins[c]);
            }
        }
    }
}

std::vector<std::uint32_t> ApproxCounter::min_ranks(const Range& range, QueryStats* stats) const {
    const RangeCover cover = canonical_cover(tree_, range, stats);
    std::vector<std::uint32_t> out(ranks_.size(), std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        std::uint32_t m = out[i];
        for (std::uint32_t v : cover.nodes) m = std::min(m, node_min_[i][v]);
        for (std::uint32_t k : cover.points) m = std::min(m, ranks_[i][k]);
        out[i] = m;
    }
    return out;
}

std::size_t ApproxCounter::count(const Range& range, QueryStats* stats) const {
    if (emptiness(tree_, range, stats)) return 0;
    const std::size_t n = tree_.points.size();
    const std::vector<std::uint32_t> mr = min_ranks(range, stats);
    if (params_.method == ApproxMethod::kMinRank) {
        const double m_hat = min_rank_mle(n, mr);
        const double t = std::round(m_hat * (1.0 - params_.delta / 2));
        return static_cast<std::size_t>(std::clamp(t, 1.0, static_cast<double>(n)));
    }
    // Guess levels m_j = ceil((1+delta)^j); a level is too small when at least
    // a majority of its samples meet the range.
    const double base = 1.0 + params_.delta;
    const auto J = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)) / std::log(base)));
    auto level = [&](std::size_t j) { return std::ceil(std::pow(base, static_cast<double>(j))); };
    auto too_small = [&](std::size_t j) {
        const double mj = level(j);
        const auto k = static_cast<std::size_t>(
            std::min(static_cast<double>(n), std::ceil(params_.c_g * static_cast<double>(n) / mj)));
        std::size_t hits = 0;
        for (std::uint32_t r : mr)
            if (sample_nonempty(r, k)) ++hits;
        return static_cast<double>(hits) >= params_.majority * static_cast<double>(mr.size());
    };
    std::size_t lo = 0, hi = J;  // answer: first level that is not too small
    if (too_small(hi)) return n;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (too_small(mid)) lo = mid + 1;
        else hi = mid;
    }
    return static_cast<std::size_t>(std::min(level(lo), static_cast<double>(n)));
}

std::size_t approx_count(const PartitionTree& tree, const Range& range, const ApproxParams& params) {
    return ApproxCounter(tree, params).count(range);
}

}  // namespace shallow
