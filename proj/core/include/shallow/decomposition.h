#pragma once

// Vertical decomposition of the complement of a union of convex ranges, and
// weighted shallow cuttings built on it.

#include <cstdint>
#include <string>
#include <vector>

#include "shallow/cell.h"
#include "shallow/ranges.h"

namespace shallow {

/// Cells tiling clip minus the union of the shapes. Cells are relatively
/// open and pairwise disjoint; zero-height gaps are dropped.
std::vector<ElementaryCell> union_complement_decompose(const std::vector<ConvexShape>& shapes,
                                                       const ElementaryCell& clip,
                                                       const Tolerance& tol = kDefaultTolerance);
std::vector<ElementaryCell> union_complement_decompose(const std::vector<Range>& ranges,
                                                       const ElementaryCell& clip,
                                                       const Tolerance& tol = kDefaultTolerance);

/// Number of vertices of the arrangement of range boundaries that lie on the
/// boundary of the union: pairwise boundary crossings plus range corners not
/// strictly inside another range. Coincident vertices count once.
/// Points pairwise farther apart than eps (Chebyshev), chosen greedily in
/// lexicographic order.
std::size_t count_distinct(std::vector<Point2> pts, double eps);

std::size_t union_boundary_vertices(const std::vector<Range>& ranges,
                                    const Tolerance& tol = kDefaultTolerance);

/// Ranges with weights 2^kappa[i].
struct WeightedRanges {
    std::vector<Range> ranges;
    std::vector<int> kappa;

    explicit WeightedRanges(std::vector<Range> rs = {})
        : ranges(std::move(rs)), kappa(ranges.size(), 0) {}

    std::size_t size() const { return ranges.size(); }
    int max_kappa() const;
    /// 2^(kappa[i] - max_kappa()); total and per-cell weights are compared in
    /// this shifted scale so large exponents never overflow.
    double shifted_weight(std::size_t i) const;
    double shifted_total() const;
    /// log2 of the true total weight.
    double log2_total() const;
};

/// Weighted sample of k distinct indices out of `pool` (all of wr when pool
/// is empty), probability proportional to 2^kappa, without replacement.
template <class Rng>
std::vector<std::uint32_t> weighted_sample(const WeightedRanges& wr,
                                           const std::vector<std::uint32_t>& pool,
                                           std::size_t k, Rng& rng);

struct CuttingOptions {
    double c_s = 4.0;
    int max_rounds = 6;
    std::size_t cell_budget = 0;  // 0: unlimited
    Tolerance tol = kDefaultTolerance;
};

struct Cutting {
    std::vector<ElementaryCell> cells;
    std::vector<std::vector<std::uint32_t>> crossing;  // per cell, range ids
    std::vector<std::uint32_t> uncovered_witnesses;    // sorted, distinct
    std::size_t initial_cells = 0;
    int rounds = 0;
    bool compliant = false;  // every cell crossed by weight <= W/r

    double crossing_weight(const WeightedRanges& wr, std::size_t cell) const;
};

/// Crossing ranges (open semantics) of one cell, restricted to `candidates`
/// (all ranges when empty).
std::vector<std::uint32_t> crossing_list(const std::vector<PreparedShape>& prepared,
                                         const ElementaryCell& cell,
                                         const std::vector<std::uint32_t>& candidates = {});

Cutting shallow_cutting(const WeightedRanges& wr, double r, const ElementaryCell& clip,
                        std::uint64_t seed, const CuttingOptions& opt = {});

/// Cells as JSON polylines (arcs flattened to 64 segments), for plotting.
std::string cells_to_json(const std::vector<ElementaryCell>& cells);

}  // namespace shallow

#include "shallow/detail/weighted_sample.h"
