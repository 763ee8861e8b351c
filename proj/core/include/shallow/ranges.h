#pragma once

// Query and test ranges. Every supported range is convex: an intersection of
// at most a few halfplanes, optionally with one disk. ConvexShape is that
// common form and drives membership, cell classification, and the vertical
// decomposition of unions.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shallow/cell.h"
#include "shallow/geom.h"

namespace shallow {

struct FatTriangle {
    std::array<Point2, 3> v{};  // counterclockwise
    double alpha = 0.0;         // declared fatness, radians

    /// Reorders to counterclockwise; throws degenerate-triangle on collinear
    /// input. Does not enforce alpha (see check_fatness).
    static FatTriangle make(Point2 a, Point2 b, Point2 c, double alpha);
};

struct CircularCap {
    Circle2 disk;
    Line2 chord;  // cap = disk ∩ closed positive side of chord
};

struct Disk {
    Circle2 circle;
};

struct Halfplane {
    Line2 line;  // closed positive side
};

/// Intersection of at most three halfplanes with a clip box.
struct ClippedWedge {
    std::vector<Line2> sides;
    Box clip = kUnitBox;
};

using Range = std::variant<FatTriangle, CircularCap, Disk, Halfplane, ClippedWedge>;

enum class CellRelation { kDisjoint, kCrosses, kContains };

/// How relate_cell treats boundaries.
///  kClosed: conservative for queries. Contains and Disjoint are only reported
///           with a margin, so every point of the closed cell agrees with
///           contains_point. Ambiguous pairs are Crosses.
///  kOpen:   the cell is relatively open and touching boundaries do not count
///           as crossing (cutting semantics).
enum class Semantics { kClosed, kOpen };

struct ConvexShape {
    static constexpr int kMaxLines = 8;
    std::array<Line2, kMaxLines> lines{};
    int line_count = 0;
    std::optional<Circle2> disk;

    void add(const Line2& l) { lines[line_count++] = l; }
    std::span<const Line2> halfplanes() const {
        return {lines.data(), static_cast<std::size_t>(line_count)};
    }
    /// Offsets every boundary outward by delta (inward for negative delta).
    ConvexShape inflated(double delta) const;
    bool contains(Point2 p, double eps = 0.0) const;
    /// min over constraints of the signed slack (>= 0 inside).
    double depth(Point2 p) const;
    /// Some point of the shape, or nullopt if it is empty.
    std::optional<Point2> interior_point() const;
    Box bounding_box(const Box& fallback) const;
};

ConvexShape to_shape(const Range& r);

/// A shape with its inflated/deflated probes precomputed, for classifying
/// one range against many cells.
struct PreparedShape {
    ConvexShape shape;
    Tolerance tol;
    ConvexShape probe[2];  // [0] inflated (closed), [1] deflated (open)
    std::optional<Point2> probe_point[2];
    Box probe_box[2];

    PreparedShape() = default;
    explicit PreparedShape(const ConvexShape& s, const Tolerance& t = kDefaultTolerance);
    explicit PreparedShape(const Range& r, const Tolerance& t = kDefaultTolerance)
        : PreparedShape(to_shape(r), t) {}

    CellRelation relate(const ElementaryCell& cell, Semantics sem = Semantics::kClosed) const;
};

std::string range_type_name(const Range& r);

/// True iff p lies in the closed region of r.
bool contains_point(const Range& r, Point2 p);

/// theta = 2*acos(-s/rho), s = signed distance from the center to the chord,
/// positive on the cap side.
double central_angle(const CircularCap& c, const Tolerance& tol = kDefaultTolerance);

double min_interior_angle(const FatTriangle& t);
double min_interior_angle(Point2 a, Point2 b, Point2 c);

CellRelation relate_cell(const Range& r, const ElementaryCell& cell,
                         Semantics sem = Semantics::kClosed,
                         const Tolerance& tol = kDefaultTolerance);
CellRelation relate_cell(const ConvexShape& s, const ElementaryCell& cell,
                         Semantics sem = Semantics::kClosed,
                         const Tolerance& tol = kDefaultTolerance);

/// Open-interior membership: at least eps inside every constraint.
bool contains_point_strictly(const Range& r, Point2 p, double eps = 1e-12);

/// Bounding box of the range, clipped to `world`.
Box range_bounding_box(const Range& r, const Box& world = kUnitBox);

}  // namespace shallow
