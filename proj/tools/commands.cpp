#include "commands.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>

#include "json.hpp"
#include "shallow/decomposition.h"
#include "shallow/error.h"
#include "shallow/io.h"
#include "shallow/query.h"
#include "shallow/workload.h"

#ifndef SHALLOW_VERSION
#define SHALLOW_VERSION "0.0.0"
#endif

namespace shallowctl {

using nlohmann::json;
using namespace shallow;

namespace {

constexpr double kDeg = kPi / 180.0;

Family family_from(const std::string& s) {
    if (s == "triangles" || s == "fat_triangle" || s == "triangle") return Family::kTriangles;
    if (s == "caps" || s == "cap") return Family::kCaps;
    throw Error(ErrorCode::kInvalidArgument, "unknown family '" + s + "'");
}

CoverMode mode_from(const std::string& s) {
    if (s == "emptiness") return CoverMode::kEmptiness;
    if (s == "reporting") return CoverMode::kReporting;
    throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + s + "'");
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json stats_json(const QueryStats& s) {
    return {{"nodes_visited", s.nodes_visited},
            {"cells_crossed_max", s.cells_crossed_max},
            {"leaves_scanned", s.leaves_scanned},
            {"fallbacks", s.fallbacks}};
}

void write_meta(const std::string& out, const RunConfig& cfg, json extra) {
    if (out.empty() || out == "-") return;
    extra["version"] = SHALLOW_VERSION;
    extra["config"] = json::parse(cfg.to_json());
    write_file(out + ".meta.json", extra.dump(2) + "\n");
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") std::cout << text;
    else write_file(out, text);
}

// Answers queries with a tree or by brute force; both share the family check.
class Engine {
public:
    Engine(const PartitionTree& tree, bool naive, const RunConfig& cfg)
        : tree_(tree), naive_(naive), cfg_(cfg) {}

    json evaluate(const Query& q, bool approx_all) {
        json line = json::parse(q.text);
        try {
            QueryStats st;
            if (q.kind == Query::Kind::kNearest) {
                line["result"] = nearest(q, st);
            } else if (q.kind == Query::Kind::kApproxCount || approx_all) {
                const double delta = q.kind == Query::Kind::kApproxCount ? q.delta : cfg_.delta;
                line["result"] = {{"count", approx(q.range, delta, st)}};
            } else {
                line["result"] = range(q.range, st);
            }
            line["stats"] = stats_json(st);
        } catch (const Error& e) {
            line["error"] = e.what();
        }
        return line;
    }

private:
    json range(const Range& r, QueryStats& st) {
        QueryOptions opt;
        opt.kappa_thresh = cfg_.kappa_thresh;
        check_family(tree_, r, opt.eps_family);
        const bool reporting = tree_.config.mode == CoverMode::kReporting;
        json res;
        if (naive_) {
            res["empty"] = brute_empty(tree_.points, r);
            if (reporting) res["points"] = brute_report(tree_.points, r);
            return res;
        }
        if (reporting) {
            const auto pts = report(tree_, r, &st, opt);
            res["empty"] = pts.empty();
            res["points"] = pts;
        } else {
            res["empty"] = emptiness(tree_, r, &st, opt);
        }
        return res;
    }

    json nearest(const Query& q, QueryStats& st) {
        std::optional<Nearest> nb;
        if (naive_) {
            if (tree_.config.family != Family::kCaps)
                throw Error(ErrorCode::kFamilyMismatch, "nearest_above_line needs the cap family");
            if (q.line.signed_dist(q.q) < 0.0) throw Error(ErrorCode::kQBelowLine, "query point below the line");
            nb = brute_nearest_above(tree_.points, q.q, q.line);
        } else {
            QueryOptions opt;
            opt.kappa_thresh = cfg_.kappa_thresh;
            nb = nearest_above_line(tree_, q.q, q.line, 0.0, &st, opt);
        }
        if (!nb) return nullptr;
        return {{"index", nb->index}, {"point", point_json(tree_.points[nb->index])}, {"distance", nb->distance}};
    }

    std::size_t approx(const Range& r, double delta, QueryStats& st) {
        check_family(tree_, r);
        if (naive_) return brute_count(tree_.points, r);
        auto& slot = counters_[delta];
        if (!slot) slot = std::make_unique<ApproxCounter>(tree_, cfg_.approx_params(delta));
        return slot->count(r, &st);
    }

    const PartitionTree& tree_;
    bool naive_;
    const RunConfig& cfg_;
    std::map<double, std::unique_ptr<ApproxCounter>> counters_;
};

// A tree holding only points and configuration, for the naive engine.
PartitionTree bare_tree(std::vector<Point2> P, const TreeConfig& cfg) {
    PartitionTree t;
    t.config = cfg;
    t.bbox = points_bbox(P);
    t.points = std::move(P);
    return t;
}

std::vector<Query> random_queries(const PartitionTree& t, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Query> out;
    for (std::size_t k = 0; k < count; ++k) {
        Query q;
        q.line_no = k + 1;
        if (t.config.family == Family::kTriangles) q.range = random_fat_triangle(rng, t.bbox, t.config.alpha);
        else q.range = random_cap_query(rng, t.bbox, t.config.cap.beta_min);
        q.text = query_to_jsonl(q);
        out.push_back(std::move(q));
    }
    return out;
}

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size()))) - 1;
    return v[std::min(k, v.size() - 1)];
}

}  // namespace

TreeConfig RunConfig::tree_config() const {
    if (!(r >= 2.0)) throw Error(ErrorCode::kInvalidArgument, "--r must be >= 2");
    if (!(alpha_deg > 0 && alpha_deg <= 60)) throw Error(ErrorCode::kInvalidArgument, "--alpha-deg must be in (0, 60]");
    if (!(beta_min_deg >= 180 && beta_min_deg < 360))
        throw Error(ErrorCode::kInvalidArgument, "--beta-min-deg must be in [180, 360)");
    if (leaf_size < 1) throw Error(ErrorCode::kInvalidArgument, "--leaf-size must be >= 1");
    TreeConfig c;
    c.family = family_from(family);
    c.mode = mode_from(mode);
    c.r = r;
    c.leaf_size = leaf_size;
    c.alpha = alpha_deg * kDeg;
    c.cap.beta = beta_deg * kDeg;
    c.cap.beta_min = beta_min_deg * kDeg;
    c.test_budget = budget;
    c.seed = seed;
    c.partition.c_kappa = c_kappa;
    return c;
}

ApproxParams RunConfig::approx_params(double delta_override) const {
    ApproxParams p;
    p.delta = delta_override > 0 ? delta_override : delta;
    p.seed = seed;
    return p;
}

std::string RunConfig::to_json() const {
    return json{{"seed", seed},
                {"family", family},
                {"mode", mode},
                {"r", r},
                {"alpha_deg", alpha_deg},
                {"beta_deg", beta_deg},
                {"beta_min_deg", beta_min_deg},
                {"leaf_size", leaf_size},
                {"budget", budget},
                {"c_kappa", c_kappa},
                {"kappa_thresh", kappa_thresh},
                {"engine", engine},
                {"delta", delta}}
        .dump();
}

int cmd_gen(std::size_t n, const std::string& dist, std::uint64_t seed, const std::string& out) {
    const auto P = generate_points(n, distribution_from_name(dist), seed);
    std::string text = "# shallowpart " SHALLOW_VERSION " gen n=" + std::to_string(n) + " dist=" + dist +
                       " seed=" + std::to_string(seed) + "\n";
    text += "x,y\n";
    char buf[64];
    for (const Point2& p : P) {
        auto r = std::to_chars(buf, buf + sizeof buf, p.x);
        *r.ptr++ = ',';
        r = std::to_chars(r.ptr, buf + sizeof buf, p.y);
        *r.ptr++ = '\n';
        text.append(buf, r.ptr);
    }
    emit(out, text);
    return 0;
}

int cmd_build(const std::string& points, const RunConfig& cfg, const std::string& out) {
    auto P = read_points(points);
    const auto t0 = std::chrono::steady_clock::now();
    const PartitionTree tree = build_tree(std::move(P), cfg.tree_config());
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    save_tree(tree, out);
    json stats = json::parse(tree_stats_json(tree));
    stats["version"] = SHALLOW_VERSION;
    stats["run_config"] = json::parse(cfg.to_json());
    stats["build_ms"] = ms;
    stats["points_file"] = points;
    write_file(out + ".stats.json", stats.dump(2) + "\n");
    std::cerr << "built " << tree.nodes.size() << " nodes over " << tree.points.size() << " points in "
              << ms << " ms\n";
    return 0;
}

int cmd_query(const std::string& index, const std::string& points, const std::string& queries,
              const RunConfig& cfg, const std::string& out, bool approx_all) {
    const bool naive = cfg.engine == "naive";
    if (!naive && cfg.engine != "tree") throw Error(ErrorCode::kInvalidArgument, "--engine must be tree or naive");
    PartitionTree tree;
    if (!index.empty()) {
        tree = load_tree(index);
    } else if (!points.empty()) {
        tree = naive ? bare_tree(read_points(points), cfg.tree_config()) : build_tree(read_points(points), cfg.tree_config());
    } else {
        throw Error(ErrorCode::kInvalidArgument, "give --index or --points");
    }
    const std::vector<Query> qs = read_queries(queries);
    Engine engine(tree, naive, cfg);
    std::string text;
    for (const Query& q : qs) text += engine.evaluate(q, approx_all).dump() + "\n";
    emit(out, text);
    write_meta(out, cfg,
               {{"command", approx_all ? "approx" : "query"},
                {"index", index},
                {"points", points},
                {"queries", queries},
                {"tree_config", json::parse(tree_config_json(tree.config))},
                {"results", qs.size()}});
    return 0;
}

int cmd_verify(const std::string& points, const std::string& queries, std::size_t gen_queries,
               const RunConfig& cfg, const std::string& out) {
    auto P = points.empty() ? generate_points(1000, Distribution::kUniform, cfg.seed) : read_points(points);
    const PartitionTree tree = build_tree(P, cfg.tree_config());
    const PartitionTree bare = bare_tree(std::move(P), tree.config);
    const std::vector<Query> qs =
        queries.empty() ? random_queries(tree, gen_queries, cfg.seed ^ 0x5EEDULL) : read_queries(queries);
    Engine fast(tree, false, cfg);
    Engine slow(bare, true, cfg);
    std::size_t mismatches = 0, errors = 0, approx_outside = 0;
    json first = json::array();
    for (const Query& q : qs) {
        const json a = fast.evaluate(q, false);
        const json b = slow.evaluate(q, false);
        if (a.contains("error") || b.contains("error")) {
            ++errors;
            if (a.contains("error") != b.contains("error")) {
                ++mismatches;
                if (first.size() < 10) first.push_back({{"line", q.line_no}, {"tree", a}, {"naive", b}});
            }
            continue;
        }
        if (q.kind == Query::Kind::kApproxCount) {
            const auto t = a["result"]["count"].get<std::size_t>();
            const auto m = b["result"]["count"].get<std::size_t>();
            if ((m == 0) != (t == 0)) ++mismatches;
            else if (t > m || static_cast<double>(t) < (1 - q.delta) * static_cast<double>(m)) ++approx_outside;
            continue;
        }
        if (a["result"] != b["result"]) {
            ++mismatches;
            if (first.size() < 10) first.push_back({{"line", q.line_no}, {"tree", a["result"]}, {"naive", b["result"]}});
        }
    }
    const json report = {{"version", SHALLOW_VERSION},
                         {"config", json::parse(cfg.to_json())},
                         {"n", tree.points.size()},
                         {"queries", qs.size()},
                         {"mismatches", mismatches},
                         {"errors", errors},
                         {"approx_outside_window", approx_outside},
                         {"first_mismatches", first}};
    emit(out, report.dump(2) + "\n");
    return mismatches == 0 ? 0 : 1;
}

int cmd_bench(const std::string& points, const std::vector<std::size_t>& sizes,
              const std::vector<std::string>& families, std::size_t queries, const RunConfig& cfg,
              const std::string& out) {
    const std::vector<Point2> source = points.empty() ? std::vector<Point2>{} : read_points(points);
    std::string csv = "# shallowpart " SHALLOW_VERSION " bench config=" + cfg.to_json() + "\n";
    csv += "family,n,build_ms,nodes,depth,q_size,union_vertices,union_per_range,max_test_crossing,"
           "query_p50_us,query_p90_us,query_p99_us,visited_median,visited_max,crossed_max,fallbacks,naive_p50_us\n";
    for (const std::string& fam : families) {
        RunConfig c = cfg;
        c.family = fam;
        for (std::size_t n : sizes) {
            std::vector<Point2> P;
            if (source.empty()) P = generate_points(n, Distribution::kUniform, cfg.seed + n);
            else P.assign(source.begin(), source.begin() + static_cast<std::ptrdiff_t>(std::min(n, source.size())));
            const TreeConfig tc = c.tree_config();
            const auto t0 = std::chrono::steady_clock::now();
            const PartitionTree tree = build_tree(P, tc);
            const double build_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            // Union complexity of a root-style test set.
            const ShallowNet net = draw_shallow_net(P.size(), tc.r, tc.net, cfg.seed);
            std::vector<Point2> N;
            for (std::uint32_t k : net.sample) N.push_back(P[k]);
            SampledOptions so;
            so.budget = tc.test_budget;
            so.seed = cfg.seed;
            so.mode = tc.mode;
            const TestSet ts = sampled_test_set(tc.family, N, tc.alpha, tc.cap, tree.bbox, so);
            const std::size_t uv = union_boundary_vertices(ts.ranges);
            const std::vector<Query> qs = random_queries(tree, queries, cfg.seed ^ n);
            std::vector<double> lat, naive_lat, visited;
            std::size_t crossed = 0, fallbacks = 0;
            QueryOptions opt;
            opt.kappa_thresh = cfg.kappa_thresh;
            for (const Query& q : qs) {
                QueryStats st;
                auto a = std::chrono::steady_clock::now();
                if (tc.mode == CoverMode::kReporting) (void)report(tree, q.range, &st, opt);
                else (void)emptiness(tree, q.range, &st, opt);
                lat.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - a).count());
                a = std::chrono::steady_clock::now();
                (void)brute_report(tree.points, q.range);
                naive_lat.push_back(
                    std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - a).count());
                visited.push_back(static_cast<double>(st.nodes_visited));
                crossed = std::max(crossed, st.cells_crossed_max);
                fallbacks += st.fallbacks;
            }
            std::uint32_t max_cross = 0;
            for (const TreeNode& v : tree.nodes) max_cross = std::max(max_cross, v.max_crossing);
            char row[512];
            std::snprintf(row, sizeof row, "%s,%zu,%.3f,%zu,%zu,%zu,%zu,%.4f,%u,%.3f,%.3f,%.3f,%.1f,%.0f,%zu,%zu,%.3f\n",
                          family_name(tc.family), P.size(), build_ms, tree.nodes.size(), tree.depth(), ts.size(), uv,
                          ts.size() ? static_cast<double>(uv) / static_cast<double>(ts.size()) : 0.0, max_cross,
                          percentile(lat, 0.5), percentile(lat, 0.9), percentile(lat, 0.99), percentile(visited, 0.5),
                          visited.empty() ? 0.0 : *std::max_element(visited.begin(), visited.end()), crossed, fallbacks,
                          percentile(naive_lat, 0.5));
            csv += row;
            std::cerr << row;
        }
    }
    emit(out, csv);
    return 0;
}

}  // namespace shallowctl
