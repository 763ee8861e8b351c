#pragma once

// Elementary cell partitions of a point set with low crossing numbers for a
// test set of shallow ranges, and the recursive partition tree built on them.

#include <cstdint>
#include <span>
#include <vector>

#include "shallow/canonize.h"
#include "shallow/cell.h"
#include "shallow/decomposition.h"
#include "shallow/sampling.h"

namespace shallow {

/// Size bound for decomposing the complement of a union of m ranges.
double zeta(Family family, double m);
/// Largest m with zeta(m) <= r, by bisection.
double zeta_inv(Family family, double r);

struct PartitionParams {
    double c_t = 1.0;       // cutting parameter t = max(2, floor(c_t * zeta_inv(r)))
    double c_kappa = 4.0;   // crossing bound constant
    int retries = 3;        // reseeded cuttings before the slab fallback
    CuttingOptions cutting;
};

struct PartitionClass {
    std::vector<std::uint32_t> points;  // indices into P, sorted
    ElementaryCell cell;
};

struct HalfPartition {
    std::vector<PartitionClass> classes;
    std::vector<std::uint32_t> leftover;  // unassigned indices, sorted
    std::vector<int> kappa;               // per test range, cells crossed
    std::vector<std::vector<std::uint32_t>> round_crossed;  // per class, test ranges doubled
    std::size_t t = 0;
    std::size_t cell_budget = 0;          // r/4
    std::size_t max_cutting_cells = 0;    // largest cutting seen
    std::size_t fallbacks = 0;            // classes taken from a slab
};

/// kappa bound c_kappa * (r / zeta_inv(r) + log2 |Q|).
double kappa_bound(Family family, double r, std::size_t q_size, double c_kappa = 4.0);
/// Query threshold c_kappa * (r / zeta_inv(r) + log2 |Q| * log2 r).
double kappa_threshold(Family family, double r, std::size_t q_size, double c_kappa = 4.0);

/// Classes of exactly floor(n/r) points covering at least n/2 of `ids`.
HalfPartition half_partition(std::span<const Point2> P, const std::vector<std::uint32_t>& ids,
                             const std::vector<Range>& Q, double r, Family family,
                             const ElementaryCell& clip, std::uint64_t seed,
                             const PartitionParams& params = {});

struct FullPartition {
    std::vector<PartitionClass> classes;
    std::vector<HalfPartition> rounds;
    std::size_t fallbacks = 0;
};

/// At most 2r classes of at most n/r points each, partitioning `ids`.
FullPartition full_partition(std::span<const Point2> P, const std::vector<std::uint32_t>& ids,
                             const std::vector<Range>& Q, double r, Family family,
                             const ElementaryCell& clip, std::uint64_t seed,
                             const PartitionParams& params = {});

/// Cells of `classes` crossed by a range (open semantics).
std::size_t crossing_number(const Range& range, const std::vector<PartitionClass>& classes);

struct TreeConfig {
    Family family = Family::kTriangles;
    CoverMode mode = CoverMode::kEmptiness;
    double r = 8.0;
    std::size_t leaf_size = 32;
    double alpha = kPi / 6;  // triangle fatness
    CapParams cap;
    NetParams net;
    std::size_t test_budget = 256;
    std::uint64_t seed = 1;
    PartitionParams partition;
};

struct TreeNode {
    ElementaryCell cell;
    std::uint32_t begin = 0;  // points are order[begin, end)
    std::uint32_t end = 0;
    std::vector<std::uint32_t> children;
    // Build stats.
    std::uint32_t q_size = 0;
    std::uint32_t max_crossing = 0;  // over the node's test set and its children's cells
    std::uint32_t fallbacks = 0;
    double kappa_thresh = 0.0;

    std::size_t size() const { return end - begin; }
    bool is_leaf() const { return children.empty(); }
};

struct PartitionTree {
    TreeConfig config;
    Box bbox;
    std::vector<Point2> points;
    std::vector<std::uint32_t> order;  // point indices grouped by subtree
    std::vector<TreeNode> nodes;       // preorder, root at 0

    std::span<const std::uint32_t> node_points(const TreeNode& v) const {
        return std::span<const std::uint32_t>(order).subspan(v.begin, v.size());
    }
    std::size_t depth() const;
};

/// Bounding square of P padded by 1% of its side (unit box when P is empty).
Box points_bbox(std::span<const Point2> P);

PartitionTree build_tree(std::vector<Point2> P, const TreeConfig& config);

}  // namespace shallow
