#include "shallow/workload.h"

#include <algorithm>
#include <cmath>

#include "shallow/error.h"

namespace shallow {

Distribution distribution_from_name(const std::string& name) {
    if (name == "uniform") return Distribution::kUniform;
    if (name == "gaussian") return Distribution::kGaussian;
    if (name == "clustered") return Distribution::kClustered;
    throw Error(ErrorCode::kInvalidArgument, "unknown distribution '" + name + "'");
}

const char* distribution_name(Distribution d) {
    switch (d) {
        case Distribution::kUniform: return "uniform";
        case Distribution::kGaussian: return "gaussian";
        case Distribution::kClustered: return "clustered";
    }
    return "uniform";
}

std::vector<Point2> generate_points(std::size_t n, Distribution d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    std::vector<Point2> P(n);
    switch (d) {
        case Distribution::kUniform:
            for (Point2& p : P) p = {u(rng), u(rng)};
            break;
        case Distribution::kGaussian: {
            std::normal_distribution<double> g(0.5, 0.15);
            for (Point2& p : P) p = {clamp01(g(rng)), clamp01(g(rng))};
            break;
        }
        case Distribution::kClustered: {
            const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(n) / 4));
            std::vector<Point2> centers(k);
            for (Point2& c : centers) c = {0.1 + 0.8 * u(rng), 0.1 + 0.8 * u(rng)};
            std::normal_distribution<double> g(0.0, 0.03);
            std::uniform_int_distribution<std::size_t> pick(0, k - 1);
            for (Point2& p : P) {
                const Point2 c = centers[pick(rng)];
                p = {clamp01(c.x + g(rng)), clamp01(c.y + g(rng))};
            }
            break;
        }
    }
    return P;
}

FatTriangle random_fat_triangle(std::mt19937_64& rng, const Box& bbox, double alpha, double max_size) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double side = std::max(bbox.width(), bbox.height());
    // Interior angles drawn with every angle >= alpha, then placed on a circle.
    const double slack = kPi - 3 * alpha;
    for (;;) {
        double w[3] = {u(rng), u(rng), u(rng)};
        const double sum = w[0] + w[1] + w[2];
        double ang[3];
        for (int k = 0; k < 3; ++k) ang[k] = alpha + slack * w[k] / sum;
        const double R = side * max_size * (0.02 + 0.98 * u(rng));
        const Point2 c{bbox.xmin + u(rng) * bbox.width(), bbox.ymin + u(rng) * bbox.height()};
        const double phi = kTwoPi * u(rng);
        // Vertex k sits opposite angle k; arcs between vertices are twice the angles.
        const double t0 = phi, t1 = t0 + 2 * ang[2], t2 = t1 + 2 * ang[0];
        const Point2 a = c + R * Point2{std::cos(t0), std::sin(t0)};
        const Point2 b = c + R * Point2{std::cos(t1), std::sin(t1)};
        const Point2 d = c + R * Point2{std::cos(t2), std::sin(t2)};
        if (orient2d(a, b, d) <= 0) continue;
        const FatTriangle t = FatTriangle::make(a, b, d, alpha);
        if (min_interior_angle(t) >= alpha) return t;
    }
}

CircularCap random_cap_query(std::mt19937_64& rng, const Box& bbox, double beta_min, double max_size) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double side = std::max(bbox.width(), bbox.height());
    const double rho = side * max_size * (0.02 + 0.98 * u(rng));
    const Point2 c{bbox.xmin + u(rng) * bbox.width(), bbox.ymin + u(rng) * bbox.height()};
    const double theta = beta_min + (kTwoPi - beta_min) * u(rng);
    // Central angle theta = 2 acos(-s/rho): chord at signed distance s from the center.
    const double s = -rho * std::cos(theta / 2);
    const double phi = kTwoPi * u(rng);
    const Point2 n{std::cos(phi), std::sin(phi)};
    // Cap side {n.x > n.c - s}: the center lies s inside.
    return CircularCap{{c, rho}, Line2(n.x, n.y, dot(n, c) - s)};
}

}  // namespace shallow
