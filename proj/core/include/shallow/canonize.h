#pragma once

// Canonical test ranges anchored at net points and canonical orientations,
// and the covering procedures that map an N-empty (or N-shallow) query range
// onto a few of them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shallow/ranges.h"
#include "shallow/sampling.h"

namespace shallow {

struct OrientationSet {
    double alpha = kPi / 3;
    std::vector<double> thetas;  // j*alpha/4, j = 0..floor(8*pi/alpha)

    static OrientationSet make(double alpha);
    /// Smallest theta >= t (t in [0, 2pi]) and largest theta <= t.
    double next_at_or_after(double t) const;
    double prev_at_or_before(double t) const;
    /// Index of theta within tol of t, or -1.
    int index_of(double t, double tol = 1e-12) const;
};

struct CanonicalLine {
    enum class Kind : std::uint8_t { kTwoPoints, kPointOrientation };
    Kind kind = Kind::kTwoPoints;
    std::uint32_t i = 0, j = 0;  // j unused for kPointOrientation
    double theta = 0.0;          // kPointOrientation only
    Line2 line;
};

/// All two-point lines (i < j, coincident pairs skipped) followed by all
/// point-orientation lines, sorted by (kind, i, j, theta).
std::vector<CanonicalLine> canonical_lines(std::span<const Point2> N, const OrientationSet& D);

/// How a canonical range was obtained: the net points and orientations that
/// pin it down. `kind` names the family.
struct Provenance {
    std::string kind;
    std::vector<std::uint32_t> points;
    std::vector<double> thetas;

    friend bool operator==(const Provenance&, const Provenance&) = default;
    std::string key() const;
};

enum class CoverMode { kEmptiness, kReporting };

struct Covering {
    std::vector<Range> ranges;
    std::vector<Provenance> provenance;
};

/// Covers an openly N-empty (emptiness mode) or N-shallow (reporting mode)
/// fat triangle by at most 8 canonical triangles or bbox-clipped wedges.
Covering cover_triangle(const FatTriangle& t, std::span<const Point2> N, const OrientationSet& D,
                        const Box& bbox, CoverMode mode = CoverMode::kEmptiness);

struct CapParams {
    double beta = kPi / 4;       // stop angle (iv) for the bisector slide
    double beta_min = kPi;       // minimum central angle of accepted queries
    double min_output_angle = 0.0;  // enumeration filter
};

/// Covers an openly N-empty cap (central angle >= beta_min) by at most 8
/// canonical caps, disks, halfplanes, or bbox-clipped wedges.
Covering cover_cap(const CircularCap& c, std::span<const Point2> N, const OrientationSet& D,
                   const Box& bbox, const CapParams& params = {},
                   CoverMode mode = CoverMode::kEmptiness);

enum class Family { kTriangles, kCaps };
const char* family_name(Family f);

struct TestSet {
    Family family = Family::kTriangles;
    CoverMode mode = CoverMode::kEmptiness;
    double alpha = kPi / 6;
    CapParams cap;
    Box bbox = kUnitBox;
    std::vector<Point2> net_points;
    std::vector<std::uint32_t> net_indices;  // into P, when built from a net
    std::vector<Range> ranges;
    std::vector<Provenance> provenance;
    bool truncated = false;
    std::size_t enumerated = 0;  // candidates before budget subsampling

    std::size_t size() const { return ranges.size(); }
};

struct EnumerationOptions {
    std::size_t budget = 50000;
    std::uint64_t seed = 1;
    CoverMode mode = CoverMode::kEmptiness;
    std::size_t shallow_limit = 0;  // reporting mode: max points of N inside
};

/// Exhaustive enumeration over canonical lines; only feasible for tiny N.
TestSet enumerate_canonical_triangles(std::span<const Point2> N, double alpha,
                                      const OrientationSet& D, const Box& bbox,
                                      const EnumerationOptions& opt = {});
TestSet enumerate_canonical_caps(std::span<const Point2> N, const OrientationSet& D,
                                 const CapParams& params, const Box& bbox,
                                 const EnumerationOptions& opt = {});

struct SampledOptions {
    std::size_t budget = 256;        // distinct canonical ranges to collect
    std::size_t max_queries = 4000;  // random ranges to canonize at most
    std::uint64_t seed = 1;
    CoverMode mode = CoverMode::kEmptiness;
    std::size_t shallow_limit = 0;
};

/// Test set made of the canonical covers of random N-empty (or N-shallow)
/// query-like ranges, deduplicated by provenance.
TestSet sampled_test_set(Family family, std::span<const Point2> N, double alpha,
                         const CapParams& cap, const Box& bbox, const SampledOptions& opt);

/// Random alpha-fat triangle / cap (central angle >= beta_min) in bbox,
/// shrunk about its center until openly N-empty; false if it vanished.
/// With limit > 0 the range may keep up to `limit` points of N inside.
template <class Rng>
bool random_empty_triangle(std::span<const Point2> N, double alpha, const Box& bbox, Rng& rng,
                           FatTriangle& out, double max_size = 0.5, std::size_t limit = 0);
template <class Rng>
bool random_empty_cap(std::span<const Point2> N, double beta_min, const Box& bbox, Rng& rng,
                      CircularCap& out, double max_radius = 0.5, std::size_t limit = 0);

/// Openly N-empty: no point of N at least eps inside.
bool openly_empty(const Range& r, std::span<const Point2> N, double eps = 1e-9);
std::size_t count_inside(const Range& r, std::span<const Point2> N, double eps = 1e-9);

std::string test_set_to_json(const TestSet& ts);
TestSet test_set_from_json(const std::string& text);

}  // namespace shallow

#include "shallow/detail/random_ranges.h"
