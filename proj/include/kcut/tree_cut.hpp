#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/tree.hpp"

namespace kcut {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

// Counter-based generator: every (seed, stream...) tuple gives an
// independent, reproducible sequence.
class TrialRng {
public:
    TrialRng(uint64_t seed, uint64_t a = 0, uint64_t b = 0, uint64_t c = 0);
    uint64_t next();
    double uniform();  // [0, 1) with 53 random bits
    bool bernoulli(double p) { return uniform() < p; }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    uint64_t state_;
};

struct TrialConfig {
    uint64_t seed = 1;
    // Upper bound on sampled trials per tree node.
    int trials = 256;
    // Enumerate every relevant coloring and branch subset regardless of caps.
    bool exhaustive = false;
    int exhaustive_eprime_cap = 20;
    int exhaustive_branch_cap = 16;
    // Enumeration is used by default only below this many trials per node.
    int max_enumerated_trials = 20000;
    // Largest number of incomparable vertices selected inside one subtree;
    // 0 means k for k <= 16 and ceil(sqrt k) above.
    int r_cap = 0;
    // Antichains tried per subtree before falling back to a tree DP.
    int selection_budget = 4096;
    // -1 follows r_cap (enabled only when the cap is below k).
    int rank_preprocess = -1;
};

int effective_r_cap(const TrialConfig& cfg, int k);

struct Hld {
    // Heavy child (largest subtree, ties by smaller id), -1 at leaves.
    std::vector<Vertex> heavy;
    // Branch holding the parent edge of each vertex; -1 at the root.
    std::vector<int> branch_of;
    // Top-down vertex sequence of each branch, starting at its top vertex.
    std::vector<std::vector<Vertex>> branch_vertices;
    // Child of the branch's top vertex that lies on the branch.
    std::vector<Vertex> subroot;
    int num_branches() const { return static_cast<int>(branch_vertices.size()); }
};

Hld build_hld(const RootedTree& t);
// Number of distinct branches met on the path from v to the root.
int branches_on_root_path(const Hld& h, const RootedTree& t, Vertex v);

struct Coloring {
    std::vector<EdgeId> eprime;
    std::vector<char> green;  // parallel to eprime
    std::vector<EdgeId> green_edges() const;
};

Coloring color_trial(const std::vector<EdgeId>& eprime, int lambda, TrialRng& rng);
// All colorings with at most max_green green edges, by increasing green count
// then lexicographic position.
std::vector<Coloring> enumerate_colorings(const std::vector<EdgeId>& eprime, int max_green);

struct ContractedTree {
    RootedTree tree;
    ContractionMap map;
};

// Contracts every edge of each flagged branch.
ContractedTree contract_branches(const RootedTree& t, const Hld& h, const std::vector<char>& contract);
// Each branch is contracted with probability 1 / ceil(log2 n).
ContractedTree branch_contraction_trial(const RootedTree& t, const Hld& h, TrialRng& rng);

// Edges of g[T(x)] whose endpoints are incomparable in t.
std::vector<EdgeId> eprime_edges(const MultiGraph& g, const RootedTree& t, Vertex x);

struct CandidateSet {
    std::vector<Vertex> U;
    std::vector<Vertex> minelts;
    std::vector<EdgeId> green_edges;
};

// Children of x in the tree obtained by contracting the flagged tree edges
// inside T(x) (flag per child vertex), grouped by green edges between their
// subtrees. Each group's minimal elements are the topmost vertices of the
// contracted nodes holding green-edge endpoints, reduced to minimal elements.
std::vector<CandidateSet> group_components(const MultiGraph& g, const RootedTree& t, Vertex x,
                                           const std::vector<char>& contracted, const Coloring& coloring);

struct GPrime {
    // Endpoints are vertices of g; edges leaving the group are attached to x.
    std::vector<std::pair<Vertex, Vertex>> edges;
    // Edges that every ancestor cut covering the minimal elements must cut.
    int b_count = 0;
    MultiGraph as_graph(int n) const;
};

GPrime build_gprime(const MultiGraph& g, const RootedTree& t, Vertex x, const CandidateSet& c);

// One cut per subtree T(u), on the path from u down to its minimal element.
int64_t eval_f(const GPrime& gp, const RootedTree& t, const CandidateSet& c);

struct StateTable {
    int k = 0;
    // value[x][k'] for k' in 0..k: least cut inside g[T(x)] over splits of
    // T(x) into k' parts by deleting k'-1 tree edges.
    std::vector<std::vector<int64_t>> value;
    // For k' >= 2, the topmost deleted vertices and their part counts.
    std::vector<std::vector<std::vector<std::pair<Vertex, int>>>> choice;
    // Deleted tree edges (by child vertex) realizing value[x][k'].
    std::vector<Vertex> reconstruct(Vertex x, int kp) const;
};

// Best cost of p deletions inside the subtrees of c (p >= |U|, at least one
// each) with every minimal element below a deleted edge.
int64_t eval_f_p(const GPrime& gp, const RootedTree& t, const CandidateSet& c, int p,
                 const StateTable& states, int r_cap, int selection_budget = 4096);

struct KnapsackResult {
    int64_t value = kInf;
    // (item, budget) pairs.
    std::vector<std::pair<int, int>> selection;
};

// items[i][p] is the cost of giving budget p (p >= 1) to item i; index 0 is
// ignored. Minimizes the total cost with budgets summing to target.
KnapsackResult knapsack_combine(const std::vector<std::vector<int64_t>>& items, int target);

StateTable fill_states(const MultiGraph& g, const RootedTree& t, int k, int lambda, const TrialConfig& cfg);

// Root-path sets to force-contract before the main pipeline; the first
// candidate is always the empty pass-through.
std::vector<std::vector<Vertex>> rank_preprocess(const RootedTree& t, Vertex x, int k, const TrialConfig& cfg,
                                                 TrialRng& rng);

struct SafeContraction {
    MultiGraph graph;
    RootedTree tree;
    ContractionMap map;
};

// Contracts tree edges whose endpoints have local connectivity above lambda.
// `classes` may pass precomputed high_connectivity_classes(g, lambda).
SafeContraction contract_safe_edges(const MultiGraph& g, const RootedTree& t, int lambda,
                                    const std::vector<int>* classes = nullptr);

// Best k-way split of t found by the state DP, without safe-edge contraction;
// empty if t has fewer than k-1 edges.
std::optional<Partition> best_tree_partition(const MultiGraph& g, const RootedTree& t, int k, int lambda,
                                             const TrialConfig& cfg);

KCutSolution tree_cut(const MultiGraph& g, const RootedTree& t, int lambda, int k, const TrialConfig& cfg);

bool is_spider(const RootedTree& t);
KCutSolution spider_tree_cut(const MultiGraph& g, const RootedTree& t, int lambda, int k, const TrialConfig& cfg);

}  // namespace kcut
