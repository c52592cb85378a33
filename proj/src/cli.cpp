#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcut/errors.hpp"
#include "kcut/io.hpp"
#include "kcut/oracles.hpp"
#include "kcut/sparsifier.hpp"
#include "kcut/tree_packing.hpp"

namespace kcut {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Common {
    std::string input = "-";
    std::string format = "edgelist";
    bool no_timing = false;
};

struct SolveOpts {
    int k = 2;
    uint64_t seed = 1;
    int trials = -1;
    bool exhaustive = false;
    std::string mode = "auto";
    std::string config;
    int threads = 0;
    bool cross_check = false;
};

std::string read_all(std::istream& s) {
    std::ostringstream os;
    os << s.rdbuf();
    return os.str();
}

std::string read_file(const std::string& path, std::istream& in) {
    if (path == "-") return read_all(in);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return read_all(f);
}

NamedGraph load(const Common& c, std::istream& in) { return parse_graph(read_file(c.input, in), parse_format(c.format)); }

SolverConfig solver_config(const SolveOpts& o, std::istream& in) {
    SolverConfig cfg;
    if (!o.config.empty()) apply_config(read_file(o.config, in), cfg);
    if (o.mode == "auto") cfg.mode = SolverMode::automatic;
    else if (o.mode == "treecut") cfg.mode = SolverMode::treecut_only;
    else if (o.mode == "oracle") cfg.mode = SolverMode::oracle_only;
    else throw std::invalid_argument("unknown mode: " + o.mode);
    cfg.trial.seed = o.seed;
    if (o.trials >= 0) cfg.trial.trials = o.trials;
    if (o.exhaustive) cfg.trial.exhaustive = true;
    if (o.threads > 0) cfg.threads = o.threads;
    return cfg;
}

ordered_json instance_json(const NamedGraph& ng, int k, uint64_t seed) {
    return {{"n", ng.graph.num_vertices()}, {"m", ng.graph.num_edges()}, {"k", k}, {"seed", seed}};
}

ordered_json solution_json(const NamedGraph& ng, const KCutSolution& s) {
    const MultiGraph& g = ng.graph;
    ordered_json blocks = ordered_json::array();
    for (const auto& b : s.partition.blocks) {
        ordered_json names = ordered_json::array();
        for (Vertex v : b) names.push_back(ng.names[v]);
        blocks.push_back(names);
    }
    ordered_json cut = ordered_json::array();
    for (EdgeId id : s.cut_edges) {
        const Edge& e = g.edge_at(g.find_edge(id));
        cut.push_back({{"id", id}, {"u", ng.names[e.u]}, {"v", ng.names[e.v]}});
    }
    // The value is always recomputed from the blocks.
    return {{"value", cut_value(g, s.partition)}, {"provenance", s.provenance}, {"blocks", blocks}, {"cut_edges", cut}};
}

ordered_json kt_json(const std::vector<KTIteration>& its) {
    ordered_json a = ordered_json::array();
    for (const auto& it : its)
        a.push_back({{"edges_before", it.edges_before},
                     {"edges_after", it.edges_after},
                     {"cut_edges", it.cut_edges},
                     {"supervertices", it.supervertices},
                     {"cores", it.cores},
                     {"gamma", it.gamma},
                     {"passive_fraction", it.passive_fraction}});
    return a;
}

ordered_json edges_json(const MultiGraph& g) {
    ordered_json a = ordered_json::array();
    for (const Edge& e : g.edges()) a.push_back({e.u + 1, e.v + 1});
    return a;
}

ordered_json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

ordered_json run_solve(const Common& c, const SolveOpts& o, std::istream& in) {
    auto t0 = Clock::now();
    NamedGraph ng = load(c, in);
    SolverConfig cfg = solver_config(o, in);
    SolverStats st;
    KCutSolution s = min_kcut(ng.graph, o.k, cfg, &st);
    double total = since(t0);
    ordered_json r = header("solve");
    r["instance"] = instance_json(ng, o.k, o.seed);
    r["solution"] = solution_json(ng, s);
    ordered_json stats = {{"sparsified", st.sparsified},
                          {"ni_edges", st.ni_edges},
                          {"kt_iterations", kt_json(st.kt_iterations)},
                          {"trees_packed", st.trees_packed},
                          {"tree_runs", st.tree_runs},
                          {"recursion_nodes", st.recursion_nodes}};
    if (o.cross_check && ng.graph.num_vertices() <= cfg.oracle_fallback_max_n) {
        KCutSolution opt = brute_min_kcut(ng.graph, o.k);
        bool tight = false;
        if (st.top_trees_on_input)
            for (const auto& t : st.top_trees) tight = tight || is_tight(t, opt.partition);
        stats["oracle_value"] = opt.value;
        stats["tight_tree_found"] = tight;
    }
    r["stats"] = stats;
    if (!c.no_timing)
        r["timing"] = {{"total_seconds", total},
                       {"sparsify_seconds", st.seconds_sparsify},
                       {"pack_seconds", st.seconds_pack},
                       {"treecut_seconds", st.seconds_treecut}};
    return r;
}

ordered_json run_oracle(const Common& c, int k, std::istream& in) {
    auto t0 = Clock::now();
    NamedGraph ng = load(c, in);
    KCutSolution s = brute_min_kcut(ng.graph, k);
    ordered_json r = header("oracle");
    r["instance"] = instance_json(ng, k, 0);
    r["solution"] = solution_json(ng, s);
    if (!c.no_timing) r["timing"] = {{"total_seconds", since(t0)}};
    return r;
}

ordered_json run_sparsify(const Common& c, int k, int lambda, int alpha, const std::string& config,
                          std::istream& in) {
    auto t0 = Clock::now();
    NamedGraph ng = load(c, in);
    SolverConfig cfg;
    if (!config.empty()) apply_config(read_file(config, in), cfg);
    if (lambda < 0) lambda = static_cast<int>(nontrivial_bound(ng.graph, k));
    NIResult ni = ni_sparsify(ng.graph, std::max(lambda, 1));
    KTParams kp = cfg.kt;
    if (alpha > 0) kp.alpha = alpha;
    KTResult kt = kt_sparsify(ni.subgraph, kp);
    ordered_json groups = ordered_json::array();
    std::vector<std::vector<std::string>> members(kt.map.size);
    for (Vertex v = 0; v < ng.graph.num_vertices(); ++v) members[kt.map.to[v]].push_back(ng.names[v]);
    for (auto& m : members) groups.push_back(m);
    ordered_json kept = ordered_json::array();
    for (const Edge& e : kt.contracted.edges()) kept.push_back(e.id);
    ordered_json r = header("sparsify");
    r["instance"] = instance_json(ng, k, 0);
    r["lambda"] = lambda;
    r["alpha"] = kp.alpha;
    r["ni_edges"] = ni.subgraph.num_edges();
    r["kt_iterations"] = kt_json(kt.iterations);
    r["contracted"] = {{"n", kt.contracted.num_vertices()}, {"m", kt.contracted.num_edges()}, {"groups", groups},
                       {"edge_ids", kept}};
    if (!c.no_timing) r["timing"] = {{"total_seconds", since(t0)}};
    return r;
}

ordered_json run_treepack(const Common& c, int k, int count, bool cross_check, std::istream& in) {
    auto t0 = Clock::now();
    NamedGraph ng = load(c, in);
    if (count <= 0) count = packing_count(ng.graph.num_vertices(), k);
    TreePack p = greedy_tree_packing(ng.graph, count);
    ordered_json trees = ordered_json::array();
    for (const auto& t : p.trees) trees.push_back(t.edge_ids());
    ordered_json r = header("treepack");
    r["instance"] = instance_json(ng, k, 0);
    r["count"] = count;
    r["trees"] = trees;
    r["loads"] = p.loads;
    if (cross_check) {
        KCutSolution opt = brute_min_kcut(ng.graph, k);
        ordered_json crossings = ordered_json::array();
        bool tight = false;
        for (const auto& t : p.trees) {
            crossings.push_back(crossing_edges(t, opt.partition).size());
            tight = tight || is_tight(t, opt.partition);
        }
        r["oracle_value"] = opt.value;
        r["crossings"] = crossings;
        r["tight_tree_found"] = tight;
    }
    if (!c.no_timing) r["timing"] = {{"total_seconds", since(t0)}};
    return r;
}

ordered_json run_treecut(const Common& c, const SolveOpts& o, int lambda, int tree_index, std::istream& in) {
    auto t0 = Clock::now();
    NamedGraph ng = load(c, in);
    SolverConfig cfg = solver_config(o, in);
    if (lambda < 0) lambda = static_cast<int>(nontrivial_bound(ng.graph, o.k));
    std::vector<RootedTree> trees = pack_trees(ng.graph, tree_index + 1);
    const RootedTree& t = trees.at(tree_index);
    KCutSolution s = tree_cut(ng.graph, t, lambda, o.k, cfg.trial);
    ordered_json r = header("treecut");
    r["instance"] = instance_json(ng, o.k, o.seed);
    r["lambda"] = lambda;
    r["tree"] = t.edge_ids();
    r["solution"] = solution_json(ng, s);
    if (!c.no_timing) r["timing"] = {{"total_seconds", since(t0)}};
    return r;
}

ordered_json run_gen_reduction(const Common& c, int k, const std::string& output, std::istream& in) {
    NamedGraph ng = load(c, in);
    CliqueReduction cr = gen_clique_reduction(ng.graph, k);
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::invalid_argument("cannot write " + output);
        f << serialize_graph(cr.h, parse_format(c.format));
    }
    ordered_json r = header("gen clique-reduction");
    r["k"] = k;
    r["expected_value"] = cr.expected_value;
    r["n"] = cr.h.num_vertices();
    r["m"] = cr.h.num_edges();
    r["edges"] = edges_json(cr.h);
    return r;
}

ordered_json run_gen_random(const Common& c, const RandomGraphSpec& spec, const std::string& output) {
    MultiGraph g = gen_random(spec);
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::invalid_argument("cannot write " + output);
        f << serialize_graph(g, parse_format(c.format));
    }
    ordered_json r = header("gen random");
    r["seed"] = spec.seed;
    r["simple"] = spec.simple;
    r["n"] = g.num_vertices();
    r["m"] = g.num_edges();
    r["edges"] = edges_json(g);
    return r;
}

ordered_json run_bench(const Common& c, const SolveOpts& o, const std::vector<int>& sizes, double p, int count,
                       std::istream& in) {
    SolverConfig cfg = solver_config(o, in);
    ordered_json runs = ordered_json::array();
    for (int n : sizes)
        for (int i = 0; i < count; ++i) {
            RandomGraphSpec spec;
            spec.n = n;
            spec.p = p;
            spec.seed = o.seed + static_cast<uint64_t>(i);
            MultiGraph g = gen_random(spec);
            ordered_json run = {{"n", n}, {"m", g.num_edges()}, {"k", o.k}, {"seed", spec.seed}};
            if (o.k > n) {
                run["skipped"] = "k exceeds n";
                runs.push_back(run);
                continue;
            }
            auto t0 = Clock::now();
            SolverStats st;
            KCutSolution s = min_kcut(g, o.k, cfg, &st);
            double secs = since(t0);
            run["value"] = s.value;
            run["provenance"] = s.provenance;
            run["trees_packed"] = st.trees_packed;
            run["tree_runs"] = st.tree_runs;
            if (o.cross_check && n <= cfg.oracle_fallback_max_n) {
                int64_t opt = brute_min_kcut(g, o.k).value;
                run["oracle_value"] = opt;
                run["matches_oracle"] = opt == s.value;
            }
            if (!c.no_timing) run["seconds"] = secs;
            runs.push_back(run);
        }
    ordered_json r = header("bench");
    r["p"] = p;
    r["runs"] = runs;
    return r;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("input", c.input, "graph file, or - for stdin");
    app->add_option("--format", c.format, "edgelist or dimacs")->check(CLI::IsMember({"edgelist", "dimacs"}));
    app->add_flag("--no-timing", c.no_timing, "omit wall-clock fields");
}

void add_solve(CLI::App* app, SolveOpts& o) {
    app->add_option("--seed", o.seed);
    app->add_option("--trials", o.trials, "sampled trials per tree node");
    app->add_flag("--exhaustive", o.exhaustive, "enumerate every trial");
    app->add_option("--mode", o.mode, "auto, treecut or oracle")->check(CLI::IsMember({"auto", "treecut", "oracle"}));
    app->add_option("--config", o.config, "JSON file of configuration overrides");
    app->add_option("--threads", o.threads, "worker threads (0: KCUT_THREADS or hardware)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimum k-cut solver"};
    app.require_subcommand(1);
    Common common;
    SolveOpts so;
    int lambda = -1, alpha = 0, count = 0, tree_index = 0, bench_count = 3;
    bool cross_check = false;
    std::string output;
    std::vector<int> sizes{8, 12, 16};
    double p = 0.5;
    RandomGraphSpec spec;
    bool multi = false;

    auto* solve = app.add_subcommand("solve", "solve a minimum k-cut instance");
    add_common(solve, common);
    add_solve(solve, so);
    solve->add_option("--k", so.k)->required();
    solve->add_flag("--cross-check", so.cross_check, "compare with the exhaustive oracle when small");

    auto* oracle = app.add_subcommand("oracle", "exhaustive minimum k-cut");
    add_common(oracle, common);
    oracle->add_option("--k", so.k)->required();

    auto* sparsify = app.add_subcommand("sparsify", "run NI and KT sparsification");
    add_common(sparsify, common);
    sparsify->add_option("--k", so.k);
    sparsify->add_option("--lambda", lambda, "default k^2 times the min degree");
    sparsify->add_option("--alpha", alpha);
    sparsify->add_option("--config", so.config);

    auto* treepack = app.add_subcommand("treepack", "greedy tree packing");
    add_common(treepack, common);
    treepack->add_option("--k", so.k);
    treepack->add_option("--count", count, "default 3 k^3 ceil(ln n)");
    treepack->add_flag("--cross-check", cross_check);

    auto* treecut = app.add_subcommand("treecut", "best k-cut crossing one packed tree");
    add_common(treecut, common);
    add_solve(treecut, so);
    treecut->add_option("--k", so.k)->required();
    treecut->add_option("--lambda", lambda);
    treecut->add_option("--tree", tree_index, "index of the packed tree");

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto* reduction = gen->add_subcommand("clique-reduction", "k-clique to k-cut reduction");
    add_common(reduction, common);
    reduction->add_option("--k", so.k)->required();
    reduction->add_option("--output", output, "also write the graph in --format");
    auto* random = gen->add_subcommand("random", "seeded random graph");
    random->add_option("--n", spec.n)->required();
    auto* p_opt = random->add_option("--p", spec.p);
    auto* m_opt = random->add_option("--m", spec.m);
    p_opt->excludes(m_opt);
    random->add_option("--seed", spec.seed);
    random->add_flag("--multi", multi, "allow parallel edges");
    random->add_option("--format", common.format)->check(CLI::IsMember({"edgelist", "dimacs"}));
    random->add_option("--output", output);

    auto* bench = app.add_subcommand("bench", "time the solver on seeded random graphs");
    add_solve(bench, so);
    bench->add_option("--k", so.k);
    bench->add_option("--n", sizes, "vertex counts")->delimiter(',');
    bench->add_option("--p", p);
    bench->add_option("--count", bench_count, "instances per size");
    bench->add_flag("--cross-check", so.cross_check);
    bench->add_flag("--no-timing", common.no_timing);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        ordered_json r;
        if (solve->parsed()) r = run_solve(common, so, in);
        else if (oracle->parsed()) r = run_oracle(common, so.k, in);
        else if (sparsify->parsed()) r = run_sparsify(common, so.k, lambda, alpha, so.config, in);
        else if (treepack->parsed()) r = run_treepack(common, so.k, count, cross_check, in);
        else if (treecut->parsed()) r = run_treecut(common, so, lambda, tree_index, in);
        else if (reduction->parsed()) r = run_gen_reduction(common, so.k, output, in);
        else if (random->parsed()) {
            spec.simple = !multi;
            if (m_opt->count() == 0) spec.m = -1;
            r = run_gen_random(common, spec, output);
        } else if (bench->parsed()) r = run_bench(common, so, sizes, p, bench_count, in);
        out << r.dump(2) << '\n';
        return 0;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace kcut
