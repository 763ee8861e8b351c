#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shallow/approx.h"
#include "shallow/partition.h"

namespace shallowctl {

struct RunConfig {
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string family = "caps";
    std::string mode = "reporting";
    double r = 8.0;
    double alpha_deg = 30.0;
    double beta_deg = 45.0;
    double beta_min_deg = 180.0;
    std::size_t leaf_size = 32;
    std::size_t budget = 256;
    double c_kappa = 4.0;
    double kappa_thresh = 0.0;  // 0: per-node build-time threshold
    std::string engine = "tree";
    double delta = 0.25;

    shallow::TreeConfig tree_config() const;
    shallow::ApproxParams approx_params(double delta_override = 0.0) const;
    std::string to_json() const;
};

int cmd_gen(std::size_t n, const std::string& dist, std::uint64_t seed, const std::string& out);
int cmd_build(const std::string& points, const RunConfig& cfg, const std::string& out);
int cmd_query(const std::string& index, const std::string& points, const std::string& queries,
              const RunConfig& cfg, const std::string& out, bool approx_all);
int cmd_verify(const std::string& points, const std::string& queries, std::size_t gen_queries,
               const RunConfig& cfg, const std::string& out);
int cmd_bench(const std::string& points, const std::vector<std::size_t>& sizes,
              const std::vector<std::string>& families, std::size_t queries, const RunConfig& cfg,
              const std::string& out);

}  // namespace shallowctl
