// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "kcut/errors.hpp"
#include "kcut/io.hpp"
#include "kcut/oracles.hpp"
#include "kcut/solver.hpp"
#include "kcut/sparsifier.hpp"
#include "kcut/tree_cut.hpp"
#include "kcut/tree_packing.hpp"

using namespace kcut;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& name, const std::function<Outcome()>& run) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %s (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id.c_str(), name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

struct Instance {
    MultiGraph g;
    int k;
    uint64_t seed;
};

// 200 connected graphs with n <= 9, alternating simple and multi, k in {2, 3}.
std::vector<Instance> oracle_corpus() {
    std::mt19937_64 rng(2024);
    std::vector<Instance> out;
    for (int i = 0; i < 200; ++i) {
        int n = 4 + static_cast<int>(rng() % 6);
        int extra = static_cast<int>(rng() % (2 * n));
        MultiGraph g = testutil::random_connected(n, extra, i % 2 == 1, rng);
        out.push_back({g, 2 + i % 2, static_cast<uint64_t>(i)});
    }
    return out;
}

bool has_singleton(const Partition& p) {
    for (const auto& b : p.blocks)
        if (b.size() == 1) return true;
    return false;
}

bool feasible(const MultiGraph& g, const KCutSolution& s, int k) {
    if (s.partition.k() != k) return false;
    std::vector<int> seen(g.num_vertices(), 0);
    for (const auto& b : s.partition.blocks) {
        if (b.empty()) return false;
        for (Vertex v : b) {
            if (v < 0 || v >= g.num_vertices() || seen[v]++) return false;
        }
    }
    for (int c : seen)
        if (!c) return false;
    return s.value == cut_value(g, s.partition) && s.cut_edges == cut_edges(g, s.partition);
}

Outcome criterion1() {
    int triggered = 0, mismatches = 0, total = 0;
    for (const Instance& in : oracle_corpus()) {
        ++total;
        SolverConfig cfg;
        cfg.trial.exhaustive = true;
        cfg.trial.seed = in.seed;
        SolverStats st;
        KCutSolution s = min_kcut(in.g, in.k, cfg, &st);
        KCutSolution opt = brute_min_kcut(in.g, in.k);
        bool tight = false;
        if (st.top_trees_on_input)
            for (const auto& t : st.top_trees) tight = tight || is_tight(t, opt.partition);
        if (!tight && !has_singleton(opt.partition)) continue;
        ++triggered;
        if (s.value != opt.value || !feasible(in.g, s, in.k)) ++mismatches;
    }
    double rate = 100.0 * triggered / total;
    return {mismatches == 0 && rate >= 90.0,
            fmt("%d/%d instances triggered the check (%.1f%%), %d mismatches", triggered, total, rate, mismatches)};
}

Outcome criterion2() {
    int equal = 0, unsound = 0, total = 0, sampled_equal = 0, sampled_unsound = 0;
    for (const Instance& in : oracle_corpus()) {
        ++total;
        SolverConfig cfg;
        cfg.trial.seed = in.seed;
        KCutSolution s = min_kcut(in.g, in.k, cfg);
        int64_t opt = brute_min_kcut(in.g, in.k).value;
        if (!feasible(in.g, s, in.k) || s.value < opt) ++unsound;
        equal += s.value == opt;
        // Diagnostic only: force random trials by disabling enumeration.
        SolverConfig pure = cfg;
        pure.trial.exhaustive_eprime_cap = -1;
        pure.trial.max_enumerated_trials = 0;
        KCutSolution p = min_kcut(in.g, in.k, pure);
        if (!feasible(in.g, p, in.k) || p.value < opt) ++sampled_unsound;
        sampled_equal += p.value == opt;
    }
    double rate = 100.0 * equal / total;
    return {unsound == 0 && rate >= 95.0,
            fmt("%d/%d equal the oracle (%.1f%%), %d infeasible or below optimum; "
                "pure sampling: %d/%d equal, %d unsound",
                equal, total, rate, unsound, sampled_equal, total, sampled_unsound)};
}

Outcome criterion3() {
    std::mt19937_64 rng(303);
    int mismatches = 0, cliques = 0;
    std::string first;
    for (int i = 0; i < 30; ++i) {
        int n = 4 + static_cast<int>(rng() % 3);
        int k = 3 + i % 2;
        RandomGraphSpec spec;
        spec.n = n;
        spec.p = 0.3 + 0.1 * static_cast<double>(rng() % 5);
        spec.seed = rng();
        MultiGraph g = gen_random(spec);
        CliqueReduction r = gen_clique_reduction(g, k);
        int64_t full = static_cast<int64_t>(k - 1) * n - (k - 1) * (k - 2) / 2;
        if (r.expected_value == full) ++cliques;
        SolverConfig cfg;
        cfg.trial.seed = static_cast<uint64_t>(i);
        KCutSolution s = min_kcut(r.h, k, cfg);
        if (s.value != r.expected_value || !feasible(r.h, s, k)) {
            ++mismatches;
            if (first.empty())
                first = fmt(" (first: instance %d, got %lld, expected %lld)", i, static_cast<long long>(s.value),
                            static_cast<long long>(r.expected_value));
        }
    }
    return {mismatches == 0,
            fmt("30 reductions, %d with a (k-1)-clique, %d mismatches", cliques, mismatches) + first};
}

int boundary_size(const MultiGraph& g, const std::vector<char>& in_s) {
    int c = 0;
    for (const Edge& e : g.edges()) c += in_s[e.u] != in_s[e.v];
    return c;
}

Outcome criterion4() {
    std::mt19937_64 rng(404);
    int64_t checked = 0;
    int violations = 0, size_violations = 0, starved = 0;
    for (int i = 0; i < 50; ++i) {
        RandomGraphSpec spec;
        spec.n = 8 + static_cast<int>(rng() % 23);
        spec.p = 0.1 + 0.05 * static_cast<double>(rng() % 9);
        spec.seed = rng();
        MultiGraph g = gen_random(spec);
        const int n = g.num_vertices();
        int delta = g.min_degree();
        int k = 2 + i % 2;
        for (int lambda : {1, 2, 3, delta, k * k * delta}) {
            if (lambda < 1) continue;
            MultiGraph h = ni_sparsify(g, lambda).subgraph;
            if (h.num_edges() > static_cast<int64_t>(lambda) * n) ++size_violations;
            // Candidate sets: singletons, BFS balls and random subsets, plus complements.
            int found = 0;
            for (int draw = 0; draw < 40000 && found < 1000; ++draw) {
                std::vector<char> s(n, 0);
                int kind = draw % 3;
                if (kind == 0) {
                    s[rng() % n] = 1;
                } else if (kind == 1) {
                    int target = 1 + static_cast<int>(rng() % (n - 1));
                    std::vector<Vertex> queue{static_cast<Vertex>(rng() % n)};
                    s[queue[0]] = 1;
                    for (size_t q = 0; q < queue.size() && static_cast<int>(queue.size()) < target; ++q)
                        for (int pos : g.incident(queue[q])) {
                            const Edge& e = g.edge_at(pos);
                            Vertex w = e.u == queue[q] ? e.v : e.u;
                            if (!s[w] && static_cast<int>(queue.size()) < target) {
                                s[w] = 1;
                                queue.push_back(w);
                            }
                        }
                } else {
                    for (int v = 0; v < n; ++v) s[v] = rng() % 2;
                }
                if (rng() % 2)
                    for (auto& c : s) c = !c;
                int cnt = static_cast<int>(std::count(s.begin(), s.end(), 1));
                if (cnt == 0 || cnt == n) continue;
                int bg = boundary_size(g, s);
                if (bg > lambda) continue;
                ++found;
                ++checked;
                if (boundary_size(h, s) != bg) ++violations;
            }
            if (found < 1000) ++starved;
        }
    }
    return {violations == 0 && size_violations == 0,
            fmt("%lld small cuts checked, %d boundary changes, %d size-bound violations "
                "(%d of 250 (graph, lambda) pairs had fewer than 1000 qualifying sets)",
                static_cast<long long>(checked), violations, size_violations, starved)};
}

Outcome criterion5a() {
    MultiGraph g = testutil::twin_cliques(50, 5);
    std::vector<EdgeId> bridges;
    for (const Edge& e : g.edges())
        if ((e.u < 50) != (e.v < 50)) bridges.push_back(e.id);
    KTParams p;
    p.alpha = 1;
    KTResult r = kt_sparsify(g, p);
    int kept = 0;
    for (EdgeId id : bridges) kept += r.contracted.has_edge(id);
    bool ok = kept == 5 && r.contracted.num_vertices() <= 4;
    double gamma = kt_default_gamma(g.num_edges(), p.mode, p.spectral_constant);
    double bridge_conductance = 5.0 / (50.0 * 49.0 + 5.0);
    std::string detail = fmt("%d/5 bridges kept, %d output vertices", kept, r.contracted.num_vertices());
    if (!ok) {
        KTParams loose = p;
        loose.gamma = 0.01;
        KTResult lr = kt_sparsify(g, loose);
        int loose_kept = 0;
        for (EdgeId id : bridges) loose_kept += lr.contracted.has_edge(id);
        detail += fmt("; bridge cut conductance %.5f exceeds default gamma %.5f, so the union is a gamma-expander "
                      "and is contracted whole; with gamma 0.01: %d/5 bridges kept, %d vertices",
                      bridge_conductance, gamma, loose_kept, lr.contracted.num_vertices());
    }
    return {ok, detail};
}

// Dense random blocks joined by a few edges, plus dense G(n, p) graphs.
std::vector<MultiGraph> expander_corpus() {
    std::mt19937_64 rng(505);
    std::vector<MultiGraph> out;
    for (int i = 0; i < 20; ++i) {
        if (i % 3 != 2) {
            // Large blocks joined by single edges fall below the default gamma and get cut.
            bool sparse_links = i % 3 == 0;
            int blocks = 2 + static_cast<int>(rng() % 3);
            int size = sparse_links ? 36 + static_cast<int>(rng() % 10) : 10 + static_cast<int>(rng() % 15);
            MultiGraph g(blocks * size);
            for (int b = 0; b < blocks; ++b)
                for (int u = 0; u < size; ++u)
                    for (int v = u + 1; v < size; ++v)
                        if (rng() % 10 < (sparse_links ? 9 : 7)) g.add_edge(b * size + u, b * size + v);
            for (int b = 0; b + 1 < blocks; ++b)
                for (int j = 0; j < (sparse_links ? 1 : 1 + static_cast<int>(rng() % 3)); ++j)
                    g.add_edge(b * size + static_cast<int>(rng() % size), (b + 1) * size + static_cast<int>(rng() % size));
            out.push_back(g);
        } else {
            RandomGraphSpec spec;
            spec.n = 20 + static_cast<int>(rng() % 30);
            spec.p = 0.4 + 0.1 * static_cast<double>(rng() % 4);
            spec.seed = rng();
            out.push_back(gen_random(spec));
        }
    }
    return out;
}

// The pass that meets the stop test is not recorded, so every recorded
// iteration counts as non-final.
int shrink_violations(const KTResult& r, int& checked) {
    int bad = 0;
    for (const KTIteration& it : r.iterations) {
        ++checked;
        if (10 * static_cast<int64_t>(it.edges_after) > 7 * static_cast<int64_t>(it.edges_before)) ++bad;
    }
    return bad;
}

Outcome criterion5b() {
    int violations = 0, checked = 0, loose_violations = 0, loose_checked = 0;
    for (const MultiGraph& g : expander_corpus()) {
        violations += shrink_violations(kt_sparsify(g, {}), checked);
        // Diagnostic only: a larger gamma makes the decomposition cut.
        KTParams loose;
        loose.gamma = 0.1;
        loose_violations += shrink_violations(kt_sparsify(g, loose), loose_checked);
    }
    return {violations == 0, fmt("%d iterations, %d above 7/10 of the previous edge count; "
                                 "with gamma 0.1: %d iterations, %d above",
                                 checked, violations, loose_checked, loose_violations)};
}

Outcome criterion5c() {
    int violations = 0, checked = 0, cutting = 0;
    for (const MultiGraph& g : expander_corpus()) {
        KTParams p;
        p.mode = ConductanceMode::exact;
        KTResult r = kt_sparsify(g, p);
        for (const KTIteration& it : r.iterations) {
            ++checked;
            cutting += it.cut_edges > 0;
            if (100 * static_cast<int64_t>(it.cut_edges) > 4 * static_cast<int64_t>(it.edges_before)) ++violations;
        }
    }
    return {violations == 0, fmt("%d iterations (%d with cuts), %d with cut edges above 0.04 of the edge count",
                                 checked, cutting, violations)};
}

// Root 0 with 2-3 legs (spider) or 2-3 children with up to two leaves each
// (two-level), plus random edges between non-root vertices.
std::pair<MultiGraph, RootedTree> ancestor_instance(bool spider, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> tree;
    int n = 1;
    int arms = 2 + static_cast<int>(rng() % 2);
    for (int a = 0; a < arms; ++a) {
        int top = n++;
        tree.push_back({0, top});
        int extra = static_cast<int>(rng() % 3);
        for (int j = 0, prev = top; j < extra; ++j) {
            tree.push_back({spider ? prev : top, n});
            prev = n++;
        }
    }
    MultiGraph g = MultiGraph::from_pairs(n, tree);
    std::vector<EdgeId> ids;
    for (const Edge& e : g.edges()) ids.push_back(e.id);
    int cross = 2 + static_cast<int>(rng() % 5);
    for (int j = 0; j < cross; ++j) {
        int u = 1 + static_cast<int>(rng() % (n - 1)), v = 1 + static_cast<int>(rng() % (n - 1));
        if (u != v) g.add_edge(u, v);
    }
    if (rng() % 2) g.add_edge(0, 1 + static_cast<int>(rng() % (n - 1)));
    return {g, RootedTree::from_ids(g, ids, 0)};
}

int64_t ancestor_oracle(const MultiGraph& g, const RootedTree& t, const CandidateSet& c, int p) {
    try {
        return brute_min_ancestor_cut(g, t, c.U, c.minelts, p + 1).value;
    } catch (const InfeasibleError&) {
        return kInf;
    }
}

Outcome criterion6() {
    std::mt19937_64 rng(606);
    int upper_violations = 0, equality_violations = 0, planted_checked = 0;
    int64_t evaluations = 0;
    for (int inst = 0; inst < 100; ++inst) {
        bool spider = inst < 50;
        auto [g, t] = ancestor_instance(spider, rng);
        const int n = g.num_vertices();
        std::vector<Vertex> all = t.children(t.root());
        std::sort(all.begin(), all.end());
        const int u_all = static_cast<int>(all.size());
        const int pmax = u_all + 2;
        StateTable st = fill_states(g, t, pmax + 1, 3, [] {
            TrialConfig c;
            c.exhaustive = true;
            return c;
        }());
        std::vector<EdgeId> eprime = eprime_edges(g, t, t.root());
        std::vector<char> none(n, 0);
        // Least value per budget over colorings whose group spans every root child; index 0 is eval_f.
        std::vector<int64_t> best(pmax + 1, kInf);
        for (int mask = 0; mask < (1 << eprime.size()); ++mask) {
            Coloring col{eprime, std::vector<char>(eprime.size(), 0)};
            for (size_t b = 0; b < eprime.size(); ++b) col.green[b] = mask >> b & 1;
            for (const CandidateSet& c : group_components(g, t, t.root(), none, col)) {
                GPrime gp = build_gprime(g, t, t.root(), c);
                const int usz = static_cast<int>(c.U.size());
                bool spans = c.U == all;
                if (spider) {
                    int64_t f = eval_f(gp, t, c);
                    ++evaluations;
                    if (f < ancestor_oracle(g, t, c, usz)) ++upper_violations;
                    if (spans) best[0] = std::min(best[0], f);
                }
                for (int p = usz; p <= pmax; ++p) {
                    int64_t f = eval_f_p(gp, t, c, p, st, pmax + 1);
                    ++evaluations;
                    if (f < ancestor_oracle(g, t, c, p)) ++upper_violations;
                    if (spans) best[p] = std::min(best[p], f);
                }
            }
        }
        // Planted optimum for the whole child set; the coloring it induces marks
        // the edges whose endpoints are both cut away from the root.
        CandidateSet whole{all, {}, {}};
        for (int p = u_all; p <= pmax; ++p) {
            AncestorCut opt;
            try {
                opt = brute_min_ancestor_cut(g, t, all, {}, p + 1);
            } catch (const InfeasibleError&) {
                continue;
            }
            std::vector<char> below(n, 0);
            for (EdgeId id : opt.deleted) {
                Vertex c = t.child_of_edge(id);
                for (int i = t.tin(c); i < t.tout(c); ++i) below[t.preorder()[i]] = 1;
            }
            Coloring induced{eprime, std::vector<char>(eprime.size(), 0)};
            for (size_t b = 0; b < eprime.size(); ++b) {
                const Edge& e = g.edge_at(g.find_edge(eprime[b]));
                induced.green[b] = below[e.u] && below[e.v];
            }
            // Preconditions: the induced green edges join every root child into one group.
            bool joined = false;
            for (const CandidateSet& c : group_components(g, t, t.root(), none, induced)) joined = joined || c.U == all;
            if (!joined) continue;
            ++planted_checked;
            if (best[p] != opt.value) ++equality_violations;
            if (spider && p == u_all && best[0] != opt.value) ++equality_violations;
        }
    }
    return {upper_violations == 0 && equality_violations == 0,
            fmt("%lld evaluations, %d below the ancestor cut oracle; %d planted optima met the preconditions, "
                "%d without an exact coloring",
                static_cast<long long>(evaluations), upper_violations, planted_checked, equality_violations)};
}

Outcome criterion7() {
    std::mt19937_64 rng(707);
    int violations = 0, tight_count = 0;
    for (int i = 0; i < 100; ++i) {
        int n = 4 + static_cast<int>(rng() % 6);
        MultiGraph g = testutil::random_connected(n, static_cast<int>(rng() % (2 * n)), i % 2 == 1, rng);
        RootedTree t = testutil::random_spanning_tree(g, rng);
        int k = 2 + i % 2;
        int lambda = static_cast<int>(std::max<int64_t>(1, nontrivial_bound(g, k)));
        TrialConfig cfg;
        cfg.seed = static_cast<uint64_t>(i);
        KCutSolution s = tree_cut(g, t, lambda, k, cfg);
        int64_t on_tree = brute_tree_kcut(g, t, k).value;
        KCutSolution opt = brute_min_kcut(g, k);
        if (!feasible(g, s, k) || s.value < on_tree || on_tree < opt.value) ++violations;
        if (is_tight(t, opt.partition)) {
            ++tight_count;
            cfg.exhaustive = true;
            if (tree_cut(g, t, lambda, k, cfg).value != opt.value) ++violations;
        }
    }
    return {violations == 0, fmt("100 pairs, %d with a tight tree, %d violations", tight_count, violations)};
}

RootedTree shaped_tree(int n, int shape, std::mt19937_64& rng) {
    std::vector<Edge> e;
    for (int v = 1; v < n; ++v) {
        int parent = 0;
        switch (shape) {
            case 0: parent = static_cast<int>(rng() % v); break;                       // random recursive
            case 1: parent = v - 1; break;                                               // path
            case 2: parent = (v - 1) / 2; break;                                         // complete binary
            case 3: parent = v % 2 ? std::max(0, v - 2) : v - 1; break;                  // caterpillar
            default: parent = std::max(0, v - 1 - static_cast<int>(rng() % 4)); break;  // deep and bushy
        }
        e.push_back({v - 1, parent, v});
    }
    return RootedTree::from_edges(n, e, 0);
}

Outcome criterion8() {
    std::mt19937_64 rng(808);
    int violations = 0, worst = 0;
    for (int i = 0; i < 1000; ++i) {
        int n = i % 4 == 0 ? 1024 : 1 + static_cast<int>(rng() % 1024);
        RootedTree t = shaped_tree(n, i % 5, rng);
        Hld h = build_hld(t);
        int bound = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
        for (Vertex v = 0; v < n; ++v) {
            if (!t.is_leaf(v)) continue;
            int b = branches_on_root_path(h, t, v);
            worst = std::max(worst, b);
            if (b > bound) ++violations;
        }
    }
    return {violations == 0, fmt("1000 trees, most branches on a leaf path %d, %d violations", worst, violations)};
}

std::string run_json(const std::vector<std::string>& args, const std::string& input) {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome criterion9() {
    std::mt19937_64 rng(909);
    std::vector<std::pair<std::string, int>> inputs;
    inputs.push_back({"a b\nb c\nc a\nc d\nd e\ne f\nf d\n", 2});
    inputs.push_back({serialize_graph(testutil::random_connected(9, 10, true, rng), GraphFormat::edgelist), 3});
    inputs.push_back({serialize_graph(testutil::twin_cliques(100, 3), GraphFormat::edgelist), 2});
    inputs.push_back({serialize_graph(gen_clique_reduction(testutil::complete(3), 3).h, GraphFormat::edgelist), 3});
    int differing = 0, runs = 0;
    for (const auto& [text, k] : inputs)
        for (const std::vector<std::string>& extra :
             {std::vector<std::string>{}, std::vector<std::string>{"--exhaustive"}, std::vector<std::string>{"--seed", "17"}}) {
            std::vector<std::string> base{"solve", "--k", std::to_string(k), "--no-timing"};
            base.insert(base.end(), extra.begin(), extra.end());
            std::string reference;
            for (const char* threads : {"1", "1", "2", "4"}) {
                auto args = base;
                args.insert(args.end(), {"--threads", threads});
                std::string out = run_json(args, text);
                ++runs;
                if (reference.empty()) reference = out;
                else differing += out != reference;
            }
        }
    for (int rep = 0; rep < 2; ++rep) {
        std::string a = run_json({"bench", "--n", "6,8", "--count", "2", "--k", "3", "--no-timing"}, "");
        std::string b = run_json({"bench", "--n", "6,8", "--count", "2", "--k", "3", "--no-timing", "--threads", "3"}, "");
        std::string c = run_json({"gen", "random", "--n", "30", "--p", "0.2", "--seed", "5"}, "");
        std::string d = run_json({"gen", "random", "--n", "30", "--p", "0.2", "--seed", "5"}, "");
        runs += 4;
        differing += (a != b) + (c != d);
    }
    return {differing == 0, fmt("%d CLI runs compared, %d outputs differed", runs, differing)};
}

}  // namespace

int main() {
    report("1", "exhaustive solver matches the oracle", criterion1);
    report("2", "sampled solver is sound", criterion2);
    report("3", "clique reduction ground truth", criterion3);
    report("4", "sparse certificate keeps small cuts", criterion4);
    report("5a", "expander contraction keeps planted bridges", criterion5a);
    report("5b", "expander contraction shrinks the edge count", criterion5b);
    report("5c", "expander contraction cut budget", criterion5c);
    report("6", "ancestor cut evaluation", criterion6);
    report("7", "tree cut against tree oracle", criterion7);
    report("8", "heavy-light path bound", criterion8);
    report("9", "determinism", criterion9);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
