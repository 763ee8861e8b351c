#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shallow/canonize.h"

namespace shallow {

OrientationSet OrientationSet::make(double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
    OrientationSet d;
    d.alpha = alpha;
    const auto jmax = static_cast<int>(std::floor(8.0 * kPi / alpha + 1e-12));
    for (int j = 0; j <= jmax; ++j) d.thetas.push_back(j * alpha / 4.0);
    return d;
}

double OrientationSet::next_at_or_after(double t) const {
    auto it = std::lower_bound(thetas.begin(), thetas.end(), t - 1e-12);
    if (it == thetas.end()) return thetas.front() + kTwoPi;
    return *it;
}

double OrientationSet::prev_at_or_before(double t) const {
    auto it = std::upper_bound(thetas.begin(), thetas.end(), t + 1e-12);
    if (it == thetas.begin()) return thetas.back() - kTwoPi;
    return *(it - 1);
}

int OrientationSet::index_of(double t, double tol) const {
    for (std::size_t k = 0; k < thetas.size(); ++k)
        if (std::abs(thetas[k] - t) <= tol) return static_cast<int>(k);
    return -1;
}

std::vector<CanonicalLine> canonical_lines(std::span<const Point2> N, const OrientationSet& D) {
    std::vector<CanonicalLine> out;
    for (std::uint32_t i = 0; i < N.size(); ++i) {
        for (std::uint32_t j = i + 1; j < N.size(); ++j) {
            if (N[i] == N[j]) continue;
            CanonicalLine l;
            l.kind = CanonicalLine::Kind::kTwoPoints;
            l.i = i;
            l.j = j;
            l.line = Line2::through(N[i], N[j]);
            out.push_back(l);
        }
    }
    for (std::uint32_t i = 0; i < N.size(); ++i) {
        for (double th : D.thetas) {
            CanonicalLine l;
            l.kind = CanonicalLine::Kind::kPointOrientation;
            l.i = i;
            l.theta = th;
            l.line = Line2::with_direction(N[i], th);
            out.push_back(l);
        }
    }
    return out;
}

std::string Provenance::key() const {
    std::string k = kind;
    char buf[48];
    for (std::uint32_t p : points) {
        std::snprintf(buf, sizeof buf, ":%u", p);
        k += buf;
    }
    for (double t : thetas) {
        std::snprintf(buf, sizeof buf, "/%.9f", t);
        k += buf;
    }
    return k;
}

const char* family_name(Family f) { return f == Family::kTriangles ? "triangles" : "caps"; }

bool openly_empty(const Range& r, std::span<const Point2> N, double eps) {
    const ConvexShape s = to_shape(r);
    for (const Point2& p : N)
        if (s.depth(p) > eps) return false;
    return true;
}

std::size_t count_inside(const Range& r, std::span<const Point2> N, double eps) {
    const ConvexShape s = to_shape(r);
    std::size_t k = 0;
    for (const Point2& p : N) k += s.depth(p) > eps ? 1 : 0;
    return k;
}

}  // namespace shallow
