#pragma once

// Brute-force reference answers by linear scans.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shallow/partition.h"
#include "shallow/ranges.h"

namespace shallow {

struct Nearest {
    std::uint32_t index = 0;
    double distance = 0.0;
};

bool brute_empty(std::span<const Point2> P, const Range& range);
/// Indices of points in the closed range, ascending.
std::vector<std::uint32_t> brute_report(std::span<const Point2> P, const Range& range);
std::size_t brute_count(std::span<const Point2> P, const Range& range);
/// Nearest point of P in the closed halfplane; ties go to the lowest index.
std::optional<Nearest> brute_nearest_above(std::span<const Point2> P, Point2 q, const Line2& line);
/// Cells of the partition crossed (open semantics) by the range.
std::size_t brute_crossing_number(const std::vector<PartitionClass>& partition, const Range& range);

}  // namespace shallow
