#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "shallow/approx.h"
#include "shallow/decomposition.h"
#include "shallow/oracle.h"
#include "shallow/query.h"
#include "shallow/workload.h"

using namespace shallow;

namespace {

constexpr std::uint64_t kSeed = 1;

Family family_of(const benchmark::State& state) { return state.range(0) ? Family::kCaps : Family::kTriangles; }

TreeConfig config(Family fam, CoverMode mode) {
    TreeConfig cfg;
    cfg.family = fam;
    cfg.mode = mode;
    cfg.seed = kSeed;
    return cfg;
}

// Trees are cached per (family, mode, n) so each benchmark pays the build once.
const PartitionTree& cached_tree(Family fam, CoverMode mode, std::size_t n) {
    static std::map<std::tuple<int, int, std::size_t>, std::unique_ptr<PartitionTree>> cache;
    auto& slot = cache[{static_cast<int>(fam), static_cast<int>(mode), n}];
    if (!slot)
        slot = std::make_unique<PartitionTree>(
            build_tree(generate_points(n, Distribution::kUniform, kSeed + n), config(fam, mode)));
    return *slot;
}

std::vector<Range> queries(const PartitionTree& t, std::size_t count, double max_size) {
    std::mt19937_64 rng(kSeed ^ t.points.size());
    std::vector<Range> out;
    for (std::size_t k = 0; k < count; ++k) {
        if (t.config.family == Family::kTriangles) out.push_back(random_fat_triangle(rng, t.bbox, t.config.alpha, max_size));
        else out.push_back(random_cap_query(rng, t.bbox, t.config.cap.beta_min, max_size));
    }
    return out;
}

void BM_Build(benchmark::State& state) {
    const Family fam = family_of(state);
    const auto n = static_cast<std::size_t>(state.range(1));
    const auto P = generate_points(n, Distribution::kUniform, kSeed + n);
    for (auto _ : state) benchmark::DoNotOptimize(build_tree(P, config(fam, CoverMode::kReporting)));
}

void BM_Emptiness(benchmark::State& state) {
    const PartitionTree& t = cached_tree(family_of(state), CoverMode::kEmptiness, static_cast<std::size_t>(state.range(1)));
    const auto qs = queries(t, 256, 0.1);
    std::size_t k = 0, visited = 0;
    for (auto _ : state) {
        QueryStats st;
        benchmark::DoNotOptimize(emptiness(t, qs[k++ % qs.size()], &st));
        visited += st.nodes_visited;
    }
    state.counters["nodes_visited"] = benchmark::Counter(static_cast<double>(visited), benchmark::Counter::kAvgIterations);
}

void BM_Report(benchmark::State& state) {
    const PartitionTree& t = cached_tree(family_of(state), CoverMode::kReporting, static_cast<std::size_t>(state.range(1)));
    const auto qs = queries(t, 256, 0.1);
    std::size_t k = 0, visited = 0;
    for (auto _ : state) {
        QueryStats st;
        benchmark::DoNotOptimize(report(t, qs[k++ % qs.size()], &st));
        visited += st.nodes_visited;
    }
    state.counters["nodes_visited"] = benchmark::Counter(static_cast<double>(visited), benchmark::Counter::kAvgIterations);
}

void BM_NaiveReport(benchmark::State& state) {
    const PartitionTree& t = cached_tree(family_of(state), CoverMode::kReporting, static_cast<std::size_t>(state.range(1)));
    const auto qs = queries(t, 256, 0.1);
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(brute_report(t.points, qs[k++ % qs.size()]));
}

void BM_ApproxCount(benchmark::State& state) {
    const PartitionTree& t = cached_tree(family_of(state), CoverMode::kReporting, static_cast<std::size_t>(state.range(1)));
    const ApproxCounter counter(t, ApproxParams{});
    const auto qs = queries(t, 256, 0.5);
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(counter.count(qs[k++ % qs.size()]));
}

void BM_NearestAboveLine(benchmark::State& state) {
    const PartitionTree& t = cached_tree(Family::kCaps, CoverMode::kReporting, static_cast<std::size_t>(state.range(0)));
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<Point2, Line2>> inst;
    for (int k = 0; k < 64; ++k) {
        const Point2 o{u(rng), u(rng)};
        const Line2 line(0.0, 1.0, o.y);
        inst.push_back({o + Point2{0.0, 0.1}, line});
    }
    std::size_t k = 0;
    for (auto _ : state) {
        const auto& [q, line] = inst[k++ % inst.size()];
        benchmark::DoNotOptimize(nearest_above_line(t, q, line));
    }
}

void BM_UnionVertices(benchmark::State& state) {
    const Family fam = family_of(state);
    const auto m = static_cast<std::size_t>(state.range(1));
    const PartitionTree& t = cached_tree(fam, CoverMode::kReporting, 1024);
    const auto qs = queries(t, m, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(union_boundary_vertices(qs));
    state.counters["vertices_per_range"] = static_cast<double>(union_boundary_vertices(qs)) / static_cast<double>(m);
}

}  // namespace

BENCHMARK(BM_Build)->ArgsProduct({{0, 1}, {1024, 4096}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Emptiness)->ArgsProduct({{0, 1}, {1024, 4096, 16384}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Report)->ArgsProduct({{0, 1}, {1024, 4096, 16384}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NaiveReport)->ArgsProduct({{0, 1}, {1024, 4096, 16384}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApproxCount)->ArgsProduct({{0, 1}, {1024, 4096}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NearestAboveLine)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_UnionVertices)->ArgsProduct({{0, 1}, {50, 100, 200, 400}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
