#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.h"
#include "shallow/error.h"

namespace {

void add_tree_options(CLI::App* app, shallowctl::RunConfig& cfg) {
    app->add_option("--family", cfg.family, "triangles or caps")->check(CLI::IsMember({"triangles", "caps"}));
    app->add_option("--mode", cfg.mode, "emptiness or reporting")->check(CLI::IsMember({"emptiness", "reporting"}));
    app->add_option("--r", cfg.r, "partition parameter r >= 2");
    app->add_option("--alpha-deg", cfg.alpha_deg, "fatness angle in degrees, (0, 60]");
    app->add_option("--beta-deg", cfg.beta_deg, "cap orientation spacing in degrees");
    app->add_option("--beta-min-deg", cfg.beta_min_deg, "minimum cap central angle in degrees, [180, 360)");
    app->add_option("--leaf-size", cfg.leaf_size, "maximum points per leaf");
    app->add_option("--budget", cfg.budget, "test-set size budget per node");
    app->add_option("--c-kappa", cfg.c_kappa, "crossing threshold constant");
    app->add_option("--kappa-thresh", cfg.kappa_thresh, "query crossing threshold, 0 uses the build-time value");
}

void add_seed(CLI::App* app, shallowctl::RunConfig& cfg, bool required) {
    auto* o = app->add_option("--seed", cfg.seed, "random seed");
    if (required) o->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shallowctl: shallow range searching with partition trees"};
    app.require_subcommand(1);
    shallowctl::RunConfig cfg;
    std::string points, index, queries, out, dist = "uniform", families = "triangles,caps";
    std::size_t n = 1000, gen_queries = 500, bench_queries = 200;
    std::vector<std::size_t> sizes{1024, 2048, 4096};

    auto* gen = app.add_subcommand("gen", "generate a point set");
    gen->add_option("-n,--n", n, "number of points")->required();
    gen->add_option("--dist", dist, "uniform, gaussian or clustered")
        ->check(CLI::IsMember({"uniform", "gaussian", "clustered"}));
    add_seed(gen, cfg, false);
    gen->add_option("-o,--out", out, "output CSV, '-' for stdout");

    auto* build = app.add_subcommand("build", "build and serialize a partition tree");
    build->add_option("--points", points, "points file")->required()->check(CLI::ExistingFile);
    add_tree_options(build, cfg);
    add_seed(build, cfg, false);
    build->add_option("-o,--out", out, "index output path")->required();

    auto add_query_options = [&](CLI::App* sub) {
        auto* src = sub->add_option_group("source");
        src->add_option("--index", index, "serialized index")->check(CLI::ExistingFile);
        src->add_option("--points", points, "points file, tree built in memory")->check(CLI::ExistingFile);
        src->require_option(1);
        sub->add_option("--queries", queries, "queries JSONL")->required()->check(CLI::ExistingFile);
        sub->add_option("--engine", cfg.engine, "tree or naive")->check(CLI::IsMember({"tree", "naive"}));
        sub->add_option("-o,--out", out, "results JSONL, '-' for stdout");
        add_tree_options(sub, cfg);
        add_seed(sub, cfg, false);
    };
    auto* query = app.add_subcommand("query", "answer range and nearest queries");
    add_query_options(query);
    auto* approx = app.add_subcommand("approx", "approximate counts for every range query");
    add_query_options(approx);
    approx->add_option("--delta", cfg.delta, "relative error in (0, 1)")->check(CLI::Range(0.0, 1.0));

    auto* verify = app.add_subcommand("verify", "compare tree answers against brute force");
    verify->add_option("--points", points, "points file, default 1000 uniform points")->check(CLI::ExistingFile);
    verify->add_option("--queries", queries, "queries JSONL")->check(CLI::ExistingFile);
    verify->add_option("--gen-queries", gen_queries, "random queries when --queries is absent");
    verify->add_option("-o,--out", out, "report JSON, '-' for stdout");
    add_tree_options(verify, cfg);
    add_seed(verify, cfg, true);

    auto* bench = app.add_subcommand("bench", "scaling report as CSV");
    bench->add_option("--points", points, "points file, default uniform points per size")->check(CLI::ExistingFile);
    bench->add_option("--sizes", sizes, "point counts")->delimiter(',');
    bench->add_option("--families", families, "comma-separated families");
    bench->add_option("--queries", bench_queries, "random queries per instance");
    bench->add_option("-o,--out", out, "CSV output, '-' for stdout");
    add_tree_options(bench, cfg);
    add_seed(bench, cfg, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return shallowctl::cmd_gen(n, dist, cfg.seed, out);
        if (*build) return shallowctl::cmd_build(points, cfg, out);
        if (*query) return shallowctl::cmd_query(index, points, queries, cfg, out, false);
        if (*approx) return shallowctl::cmd_query(index, points, queries, cfg, out, true);
        if (*verify) return shallowctl::cmd_verify(points, queries, gen_queries, cfg, out);
        if (*bench) {
            std::vector<std::string> fams;
            std::stringstream ss(families);
            for (std::string f; std::getline(ss, f, ',');)
                if (!f.empty()) fams.push_back(f);
            return shallowctl::cmd_bench(points, sizes, fams, bench_queries, cfg, out);
        }
    } catch (const shallow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
