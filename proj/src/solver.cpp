#include "kcut/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <thread>

#include "kcut/errors.hpp"
#include "kcut/oracles.hpp"
#include "kcut/tree_packing.hpp"

namespace kcut {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Partition singletons_plus_rest(const MultiGraph& g, int k) {
    std::vector<Vertex> order(g.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    std::vector<int> label(g.num_vertices(), 0);
    for (int i = 0; i < k - 1; ++i) label[order[i]] = i + 1;
    return Partition::from_labels(label);
}

struct Job {
    SafeContraction sc;
    ContractionMap to_level;  // level graph -> contracted graph
    uint64_t seed;
};

class Solver {
public:
    Solver(const SolverConfig& cfg, SolverStats* stats) : cfg_(cfg), stats_(stats), threads_(resolve_threads(cfg.threads)) {}

    // g's labels must be unique; they name vertices of the top-level input.
    KCutSolution solve(const MultiGraph& g, int k, int depth) {
        const int n = g.num_vertices();
        if (k < 1) throw std::invalid_argument("k must be positive");
        if (k > n) throw InfeasibleError("k exceeds the number of vertices");
        if (k == 1) return make_solution(g, Partition::from_labels(std::vector<int>(n, 0)), "trivial");
        if (k == n) {
            std::vector<int> label(n);
            std::iota(label.begin(), label.end(), 0);
            return make_solution(g, Partition::from_labels(label), "trivial");
        }
        std::vector<int> key(g.labels());
        std::sort(key.begin(), key.end());
        key.push_back(-k);
        if (auto it = memo_.find(key); it != memo_.end()) return from_memo(g, it->second);
        if (stats_) ++stats_->recursion_nodes;

        KCutSolution best = make_solution(g, singletons_plus_rest(g, k), "singletons");
        if (cfg_.mode != SolverMode::treecut_only) branch_on_singletons(g, k, depth, best);
        if (best.value > 0) tree_stage(g, k, depth, best);
        Memo m{{}, best.provenance};
        for (const auto& b : best.partition.blocks) {
            m.blocks.emplace_back();
            for (Vertex v : b) m.blocks.back().push_back(g.label(v));
        }
        memo_.emplace(std::move(key), std::move(m));
        return best;
    }

private:
    // Memoized answers name vertices by label.
    struct Memo {
        std::vector<std::vector<int>> blocks;
        std::string provenance;
    };

    KCutSolution from_memo(const MultiGraph& g, const Memo& m) {
        std::map<int, int> index;
        for (Vertex v = 0; v < g.num_vertices(); ++v) index[g.label(v)] = v;
        std::vector<int> label(g.num_vertices());
        for (size_t b = 0; b < m.blocks.size(); ++b)
            for (int l : m.blocks[b]) label[index.at(l)] = static_cast<int>(b);
        return make_solution(g, Partition::from_labels(label), m.provenance);
    }

    void branch_on_singletons(const MultiGraph& g, int k, int depth, KCutSolution& best) {
        const int n = g.num_vertices();
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
        for (Vertex v : order) {
            // {v} alone already costs deg(v).
            if (g.degree(v) >= best.value) break;
            auto [sub, old] = remove_vertex(g, v);
            KCutSolution r = solve(sub, k - 1, depth + 1);
            int64_t value = g.degree(v) + r.value;
            if (value >= best.value) continue;
            std::vector<int> label(n, 0);
            for (int b = 0; b < r.partition.k(); ++b)
                for (Vertex w : r.partition.blocks[b]) label[old[w]] = b;
            label[v] = k - 1;
            best = make_solution(g, Partition::from_labels(label), "singleton");
        }
    }

    void tree_stage(const MultiGraph& g, int k, int depth, KCutSolution& best) {
        const int n = g.num_vertices();
        MultiGraph work = g;
        ContractionMap to_work = ContractionMap::identity(n);
        const int64_t bound = nontrivial_bound(g, k);
        const double ln = std::log(static_cast<double>(std::max(n, 2)));
        const double gate = cfg_.kt_constant * std::max(k * k * ln, static_cast<double>(k) * k * k);
        auto t0 = Clock::now();
        if (g.is_simple() && g.min_degree() > gate) {
            NIResult ni = ni_sparsify(g, static_cast<int>(std::min<int64_t>(bound, 1 << 30)));
            KTParams kp = cfg_.kt;
            kp.alpha = static_cast<double>(k) * k;
            KTResult kt = kt_sparsify(ni.subgraph, kp);
            work = std::move(kt.contracted);
            to_work = kt.map;
            if (stats_ && depth == 0) {
                stats_->sparsified = true;
                stats_->ni_edges = ni.subgraph.num_edges();
                stats_->kt_iterations = kt.iterations;
                stats_->top_trees_on_input = false;
            }
        }
        if (stats_) stats_->seconds_sparsify += since(t0);
        if (work.num_vertices() < k) return;

        const int lambda = static_cast<int>(std::min<int64_t>(std::min(bound, best.value), 1 << 30));
        t0 = Clock::now();
        std::vector<RootedTree> trees = pack_trees(work, packing_count(work.num_vertices(), k, cfg_.pack_constant));
        std::vector<int> classes = high_connectivity_classes(work, lambda);
        if (stats_) {
            stats_->trees_packed += static_cast<int64_t>(trees.size());
            if (depth == 0) stats_->top_trees = trees;
        }
        // Trees that contract to the same instance give the same answer.
        std::vector<Job> jobs;
        std::map<std::pair<std::vector<int>, std::vector<EdgeId>>, int> seen;
        for (size_t i = 0; i < trees.size(); ++i) {
            SafeContraction sc = contract_safe_edges(work, trees[i], lambda, &classes);
            if (sc.tree.size() < k) continue;
            auto key = std::make_pair(sc.map.to, sc.tree.edge_ids());
            if (!seen.emplace(std::move(key), static_cast<int>(jobs.size())).second) continue;
            uint64_t seed = cfg_.trial.seed + 0x9e3779b97f4a7c15ULL * (i + 1) + static_cast<uint64_t>(depth);
            jobs.push_back({std::move(sc), to_work, seed});
        }
        if (stats_) stats_->seconds_pack += since(t0);

        t0 = Clock::now();
        std::vector<std::optional<Partition>> results(jobs.size());
        auto run = [&](size_t j) {
            TrialConfig tc = cfg_.trial;
            tc.seed = jobs[j].seed;
            results[j] = best_tree_partition(jobs[j].sc.graph, jobs[j].sc.tree, k, lambda, tc);
        };
        int workers = std::min<int>(threads_, static_cast<int>(jobs.size()));
        if (workers <= 1) {
            for (size_t j = 0; j < jobs.size(); ++j) run(j);
        } else {
            std::atomic<size_t> next{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (size_t j; (j = next.fetch_add(1)) < jobs.size();) run(j);
                });
            for (auto& th : pool) th.join();
        }
        if (stats_) {
            stats_->tree_runs += static_cast<int64_t>(jobs.size());
            stats_->seconds_treecut += since(t0);
        }
        // Reduce in job order so the answer does not depend on scheduling.
        for (size_t j = 0; j < jobs.size(); ++j) {
            if (!results[j]) continue;
            Partition p = jobs[j].to_level.pull_back(jobs[j].sc.map.pull_back(*results[j]));
            int64_t v = cut_value(g, p);
            if (v < best.value) best = make_solution(g, std::move(p), "treecut");
        }
    }

    const SolverConfig& cfg_;
    SolverStats* stats_;
    int threads_;
    std::map<std::vector<int>, Memo> memo_;
};

}  // namespace

int64_t nontrivial_bound(const MultiGraph& g, int k) {
    return static_cast<int64_t>(k) * k * (g.num_vertices() == 0 ? 0 : g.min_degree());
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("KCUT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RootedTree> pack_trees(const MultiGraph& g, int count) {
    const int n = g.num_vertices();
    Partition comps = connected_components(g);
    if (comps.k() <= 1) return greedy_tree_packing(g, count).trees;
    std::vector<std::vector<Edge>> edges(count);
    EdgeId virtual_id = -1;
    for (int c = 0; c < comps.k(); ++c) {
        auto [sub, old] = induced_subgraph(g, comps.blocks[c]);
        TreePack p = greedy_tree_packing(sub, count);
        for (int i = 0; i < count; ++i) {
            for (const Edge& e : p.trees[i].edges()) edges[i].push_back({e.id, old[e.u], old[e.v]});
            if (c > 0) edges[i].push_back({virtual_id, comps.blocks[c - 1][0], comps.blocks[c][0]});
        }
        if (c > 0) --virtual_id;
    }
    std::vector<RootedTree> out;
    for (auto& e : edges) out.push_back(RootedTree::from_edges(n, e, 0));
    return out;
}

KCutSolution min_kcut(const MultiGraph& g, int k, const SolverConfig& cfg, SolverStats* stats) {
    const int n = g.num_vertices();
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k > n) throw InfeasibleError("k exceeds the number of vertices");
    if (cfg.mode == SolverMode::oracle_only) {
        if (n > cfg.oracle_fallback_max_n) throw BudgetError("graph too large for the oracle");
        return brute_min_kcut(g, k, {std::max(cfg.oracle_fallback_max_n, 1), 100'000'000});
    }
    // Work on a copy whose labels are the input indices.
    MultiGraph h = g;
    for (Vertex v = 0; v < n; ++v) h.set_label(v, v);
    Solver s(cfg, stats);
    KCutSolution r = s.solve(h, k, 0);
    return make_solution(g, r.partition, r.provenance);
}

}  // namespace kcut
