#pragma once

// Emptiness, reporting and nearest-above-line queries on a partition tree.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "shallow/oracle.h"
#include "shallow/partition.h"

namespace shallow {

struct QueryStats {
    std::size_t nodes_visited = 0;
    std::size_t cells_crossed_max = 0;
    std::size_t leaves_scanned = 0;
    std::size_t fallbacks = 0;  // nodes scanned point by point after too many crossings

    QueryStats& operator+=(const QueryStats& o);
};

struct QueryOptions {
    /// Crossed-children limit per node; 0 uses each node's build-time threshold.
    double kappa_thresh = 0.0;
    /// Slack on the fatness / central-angle family check.
    double eps_family = 1e-9;
};

inline constexpr double kNoThreshold = std::numeric_limits<double>::infinity();

/// Throws family-mismatch when the range is outside the tree's query family.
void check_family(const PartitionTree& tree, const Range& range, double eps = 1e-9);

bool emptiness(const PartitionTree& tree, const Range& range, QueryStats* stats = nullptr,
               const QueryOptions& opt = {});
/// Indices of the points in the closed range, ascending.
std::vector<std::uint32_t> report(const PartitionTree& tree, const Range& range,
                                  QueryStats* stats = nullptr, const QueryOptions& opt = {});

/// Nodes fully inside the range plus the loose points found by scanning.
struct RangeCover {
    std::vector<std::uint32_t> nodes;
    std::vector<std::uint32_t> points;  // ascending
};
RangeCover canonical_cover(const PartitionTree& tree, const Range& range, QueryStats* stats = nullptr,
                           const QueryOptions& opt = {});

/// Nearest point to q in the closed halfplane, for q in that halfplane.
/// tol <= 0 uses 1e-6 times the bbox diameter.
std::optional<Nearest> nearest_above_line(const PartitionTree& tree, Point2 q, const Line2& line,
                                          double tol = 0.0, QueryStats* stats = nullptr,
                                          const QueryOptions& opt = {});

}  // namespace shallow
