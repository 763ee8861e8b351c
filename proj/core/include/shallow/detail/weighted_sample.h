#pragma once

#include <algorithm>
#include <cmath>
#include <random>

namespace shallow {

// Efraimidis-Spirakis keys u^(1/w), compared in log-log space:
// smallest ln(-ln u) - ln w wins.
template <class Rng>
std::vector<std::uint32_t> weighted_sample(const WeightedRanges& wr,
                                           const std::vector<std::uint32_t>& pool,
                                           std::size_t k, Rng& rng) {
    std::vector<std::uint32_t> ids = pool;
    if (ids.empty()) {
        ids.resize(wr.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::uint32_t>(i);
    }
    if (k >= ids.size()) {
        std::sort(ids.begin(), ids.end());
        return ids;
    }
    int kmax = wr.kappa[ids[0]];
    for (std::uint32_t id : ids) kmax = std::max(kmax, wr.kappa[id]);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<double, std::uint32_t>> keys;
    keys.reserve(ids.size());
    for (std::uint32_t id : ids) {
        double u = unif(rng);
        while (u <= 0.0) u = unif(rng);
        const double key = std::log(-std::log(u)) - (wr.kappa[id] - kmax) * std::log(2.0);
        keys.emplace_back(key, id);
    }
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), keys.end());
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(keys[i].second);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace shallow
