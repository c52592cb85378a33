#pragma once

#include <cstdint>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/sparsifier.hpp"
#include "kcut/tree.hpp"
#include "kcut/tree_cut.hpp"

namespace kcut {

enum class SolverMode { automatic, treecut_only, oracle_only };

struct SolverConfig {
    // Sparsify when min degree > kt_constant * max(k^2 ln n, k^3).
    double kt_constant = 4;
    int pack_constant = 3;
    TrialConfig trial;
    KTParams kt;
    int oracle_fallback_max_n = 10;
    SolverMode mode = SolverMode::automatic;
    // Worker threads for per-tree runs; 0 reads KCUT_THREADS, then the
    // hardware concurrency.
    int threads = 0;
};

struct SolverStats {
    bool sparsified = false;
    int ni_edges = -1;
    std::vector<KTIteration> kt_iterations;
    // Trees packed at the top level (over the graph they were packed on).
    std::vector<RootedTree> top_trees;
    bool top_trees_on_input = true;
    int64_t trees_packed = 0;
    int64_t tree_runs = 0;
    int64_t recursion_nodes = 0;
    double seconds_sparsify = 0;
    double seconds_pack = 0;
    double seconds_treecut = 0;
};

// k^2 times the minimum degree.
int64_t nontrivial_bound(const MultiGraph& g, int k);

int resolve_threads(int requested);

KCutSolution min_kcut(const MultiGraph& g, int k, const SolverConfig& cfg = {}, SolverStats* stats = nullptr);

// Trees for a possibly disconnected graph: each component is packed on its
// own and the components are chained by virtual edges with negative ids.
std::vector<RootedTree> pack_trees(const MultiGraph& g, int count);

}  // namespace kcut
