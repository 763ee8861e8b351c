#pragma once

#include <cmath>
#include <random>

namespace shallow {

template <class Rng>
bool random_empty_triangle(std::span<const Point2> N, double alpha, const Box& bbox, Rng& rng,
                           FatTriangle& out, double max_size, std::size_t limit) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double span = std::max(bbox.width(), bbox.height());
    // Angles alpha + (pi - 3 alpha) * simplex weights.
    double w[3];
    double ws = 0.0;
    for (double& x : w) ws += (x = -std::log(1.0 - u(rng)));
    double ang[3];
    for (int k = 0; k < 3; ++k) ang[k] = alpha + (kPi - 3 * alpha) * w[k] / ws;
    const Point2 c{bbox.xmin + u(rng) * bbox.width(), bbox.ymin + u(rng) * bbox.height()};
    double R = span * max_size * std::exp(std::log(0.02) * u(rng));
    const double phi = kTwoPi * u(rng);
    const double at[3] = {phi, phi + 2 * ang[2], phi + 2 * ang[2] + 2 * ang[0]};
    for (int attempt = 0; attempt < 40 && R > 1e-6 * span; ++attempt, R *= 0.7) {
        Point2 v[3];
        for (int k = 0; k < 3; ++k) v[k] = c + R * Point2{std::cos(at[k]), std::sin(at[k])};
        const FatTriangle t = FatTriangle::make(v[0], v[1], v[2], alpha);
        if (count_inside(t, N) <= limit) {
            out = t;
            return true;
        }
    }
    return false;
}

template <class Rng>
bool random_empty_cap(std::span<const Point2> N, double beta_min, const Box& bbox, Rng& rng,
                      CircularCap& out, double max_radius, std::size_t limit) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double span = std::max(bbox.width(), bbox.height());
    const Point2 c{bbox.xmin + u(rng) * bbox.width(), bbox.ymin + u(rng) * bbox.height()};
    double rho = span * max_radius * std::exp(std::log(0.02) * u(rng));
    const double th = kTwoPi * u(rng);
    const double central = beta_min + (kTwoPi - beta_min) * u(rng);
    const double ratio = -std::cos(central / 2);  // s / rho
    const Point2 n{std::cos(th), std::sin(th)};
    for (int attempt = 0; attempt < 40 && rho > 1e-6 * span; ++attempt, rho *= 0.7) {
        const CircularCap cap{{c, rho}, Line2(n.x, n.y, dot(n, c) - ratio * rho)};
        if (count_inside(cap, N) <= limit) {
            out = cap;
            return true;
        }
    }
    return false;
}

}  // namespace shallow
