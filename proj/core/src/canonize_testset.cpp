#include <random>
#include <unordered_set>

#include "json_ranges.h"
#include "shallow/canonize.h"

namespace shallow {

TestSet sampled_test_set(Family family, std::span<const Point2> N, double alpha,
                         const CapParams& cap, const Box& bbox, const SampledOptions& opt) {
    TestSet ts;
    ts.family = family;
    ts.mode = opt.mode;
    ts.alpha = alpha;
    ts.cap = cap;
    ts.bbox = bbox;
    ts.net_points.assign(N.begin(), N.end());
    const OrientationSet D = OrientationSet::make(alpha);
    const std::size_t limit = opt.mode == CoverMode::kReporting ? opt.shallow_limit : 0;
    std::mt19937_64 rng(opt.seed);
    std::unordered_set<std::string> seen;
    auto absorb = [&](Covering&& cv) {
        for (std::size_t k = 0; k < cv.ranges.size(); ++k) {
            if (ts.ranges.size() >= opt.budget) return;
            if (!seen.insert(cv.provenance[k].key()).second) continue;
            ts.ranges.push_back(std::move(cv.ranges[k]));
            ts.provenance.push_back(std::move(cv.provenance[k]));
        }
    };
    for (std::size_t q = 0; q < opt.max_queries && ts.ranges.size() < opt.budget; ++q) {
        ++ts.enumerated;
        if (family == Family::kTriangles) {
            FatTriangle t;
            if (!random_empty_triangle(N, alpha, bbox, rng, t, 0.5, limit)) continue;
            absorb(cover_triangle(t, N, D, bbox, opt.mode));
        } else {
            CircularCap c;
            if (!random_empty_cap(N, cap.beta_min, bbox, rng, c, 0.5, limit)) continue;
            absorb(cover_cap(c, N, D, bbox, cap, opt.mode));
        }
    }
    ts.truncated = ts.ranges.size() >= opt.budget;
    return ts;
}

std::string test_set_to_json(const TestSet& ts) {
    using detail::json;
    json j;
    j["family"] = family_name(ts.family);
    j["mode"] = ts.mode == CoverMode::kEmptiness ? "emptiness" : "reporting";
    j["alpha"] = ts.alpha;
    j["beta"] = ts.cap.beta;
    j["beta_min"] = ts.cap.beta_min;
    j["bbox"] = {ts.bbox.xmin, ts.bbox.ymin, ts.bbox.xmax, ts.bbox.ymax};
    j["net_points"] = json::array();
    for (Point2 p : ts.net_points) j["net_points"].push_back(detail::point_json(p));
    j["net_indices"] = ts.net_indices;
    j["truncated"] = ts.truncated;
    j["enumerated"] = ts.enumerated;
    j["ranges"] = json::array();
    for (std::size_t k = 0; k < ts.ranges.size(); ++k) {
        json r = detail::range_json(ts.ranges[k]);
        r["provenance"] = detail::provenance_json(ts.provenance[k]);
        j["ranges"].push_back(std::move(r));
    }
    return j.dump();
}

TestSet test_set_from_json(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::kMalformedInput, e.what());
    }
    try {
        TestSet ts;
        const std::string fam = j.at("family").get<std::string>();
        if (fam != "triangles" && fam != "caps") throw Error(ErrorCode::kMalformedInput, "bad family");
        ts.family = fam == "triangles" ? Family::kTriangles : Family::kCaps;
        ts.mode = j.at("mode").get<std::string>() == "reporting" ? CoverMode::kReporting : CoverMode::kEmptiness;
        ts.alpha = j.at("alpha").get<double>();
        ts.cap.beta = j.at("beta").get<double>();
        ts.cap.beta_min = j.at("beta_min").get<double>();
        const auto b = j.at("bbox").get<std::vector<double>>();
        if (b.size() != 4) throw Error(ErrorCode::kMalformedInput, "bbox must have 4 numbers");
        ts.bbox = {b[0], b[1], b[2], b[3]};
        for (const json& p : j.at("net_points")) ts.net_points.push_back(detail::point_from(p));
        ts.net_indices = j.at("net_indices").get<std::vector<std::uint32_t>>();
        ts.truncated = j.at("truncated").get<bool>();
        ts.enumerated = j.at("enumerated").get<std::size_t>();
        for (const json& r : j.at("ranges")) {
            ts.ranges.push_back(detail::range_from(r));
            ts.provenance.push_back(detail::provenance_from(r.at("provenance")));
        }
        return ts;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::kMalformedInput, e.what());
    }
}

}  // namespace shallow
