#include "shallow/oracle.h"

namespace shallow {

bool brute_empty(std::span<const Point2> P, const Range& range) {
    for (const Point2& p : P)
        if (contains_point(range, p)) return false;
    return true;
}

std::vector<std::uint32_t> brute_report(std::span<const Point2> P, const Range& range) {
    std::vector<std::uint32_t> out;
    for (std::size_t k = 0; k < P.size(); ++k)
        if (contains_point(range, P[k])) out.push_back(static_cast<std::uint32_t>(k));
    return out;
}

std::size_t brute_count(std::span<const Point2> P, const Range& range) {
    std::size_t n = 0;
    for (const Point2& p : P)
        if (contains_point(range, p)) ++n;
    return n;
}

std::optional<Nearest> brute_nearest_above(std::span<const Point2> P, Point2 q, const Line2& line) {
    std::optional<Nearest> best;
    for (std::size_t k = 0; k < P.size(); ++k) {
        if (!contains_point(Halfplane{line}, P[k])) continue;
        const double d = dist(q, P[k]);
        if (!best || d < best->distance) best = Nearest{static_cast<std::uint32_t>(k), d};
    }
    return best;
}

std::size_t brute_crossing_number(const std::vector<PartitionClass>& partition, const Range& range) {
    std::size_t n = 0;
    for (const PartitionClass& c : partition)
        if (relate_cell(range, c.cell, Semantics::kOpen) == CellRelation::kCrosses) ++n;
    return n;
}

}  // namespace shallow
