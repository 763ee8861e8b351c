#pragma once

// Random point sets and query ranges for tests, verification and benchmarks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shallow/ranges.h"

namespace shallow {

enum class Distribution { kUniform, kGaussian, kClustered };

Distribution distribution_from_name(const std::string& name);
const char* distribution_name(Distribution d);

/// n points in the unit square (gaussian and clustered samples are clamped into it).
std::vector<Point2> generate_points(std::size_t n, Distribution d, std::uint64_t seed);

/// Triangle with every angle >= alpha, centered in bbox, circumradius up to
/// max_size times the bbox side.
FatTriangle random_fat_triangle(std::mt19937_64& rng, const Box& bbox, double alpha, double max_size = 0.5);
/// Cap with central angle in [beta_min, 2*pi), radius up to max_size times the bbox side.
CircularCap random_cap_query(std::mt19937_64& rng, const Box& bbox, double beta_min, double max_size = 0.5);

}  // namespace shallow
