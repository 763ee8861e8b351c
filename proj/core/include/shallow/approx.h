#pragma once

// Approximate range counting from emptiness tests on random samples.

#include <cstdint>
#include <vector>

#include "shallow/query.h"

namespace shallow {

enum class ApproxMethod {
    kMinRank,       // nested samples per permutation, maximum-likelihood count
    kMajorityVote,  // binary search over guess levels by majority of sample answers
};

struct ApproxParams {
    double delta = 0.25;
    double confidence = 0.9;
    double c_a = 1.0;  // samples s = ceil(c_a * delta^-2 * ln n)
    double c_g = 4.0;  // majority vote: sample size min(n, ceil(c_g * n / m_j))
    double majority = 0.5;
    std::uint64_t seed = 1;
    ApproxMethod method = ApproxMethod::kMinRank;
};

std::size_t approx_sample_count(std::size_t n, const ApproxParams& p);

/// Sample structures over one tree: s random permutations of P. The prefix of
/// length k of a permutation is a uniform k-sample, and it meets a range iff
/// the smallest rank inside the range is below k.
class ApproxCounter {
public:
    ApproxCounter(const PartitionTree& tree, const ApproxParams& params);

    /// t with (1 - delta) |range ∩ P| <= t <= |range ∩ P| with good probability;
    /// 0 exactly when the range is empty.
    std::size_t count(const Range& range, QueryStats* stats = nullptr) const;

    /// Whether the k-prefix sample of permutation i meets the range, per the min ranks.
    static bool sample_nonempty(std::uint32_t min_rank, std::size_t k) { return min_rank < k; }

    std::size_t samples() const { return ranks_.size(); }
    /// Sample-structure points held: one rank per point per sample.
    std::size_t stored_points() const { return samples() * tree_.points.size(); }

private:
    std::vector<std::uint32_t> min_ranks(const Range& range, QueryStats* stats) const;

    const PartitionTree& tree_;
    ApproxParams params_;
    std::vector<std::vector<std::uint32_t>> ranks_;     // [sample][point]
    std::vector<std::vector<std::uint32_t>> node_min_;  // [sample][node]
};

/// Maximum-likelihood size of a subset of [0, n) from the minimum ranks it
/// attains in independent uniform permutations.
double min_rank_mle(std::size_t n, const std::vector<std::uint32_t>& min_ranks);

/// One-shot count without a shared cache.
std::size_t approx_count(const PartitionTree& tree, const Range& range, const ApproxParams& params);

}  // namespace shallow
