#pragma once

#include <cstdint>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/tree.hpp"

namespace kcut {

struct OracleBudget {
    int max_vertices = 12;
    int64_t max_subsets = 100'000'000;
};

// Exact nonnegative fraction; compared by cross-multiplication.
struct Ratio {
    int64_t num = 0;
    int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
};

struct ConductanceCut {
    std::vector<Vertex> set;
    Ratio conductance;
};

struct AncestorCut {
    int64_t value = 0;
    std::vector<EdgeId> deleted;
};

// Minimum cut over all partitions of V into exactly k nonempty blocks.
KCutSolution brute_min_kcut(const MultiGraph& g, int k, OracleBudget budget = {});

// Best k-cut obtained by deleting k-1 edges of t.
KCutSolution brute_tree_kcut(const MultiGraph& g, const RootedTree& t, int k,
                             OracleBudget budget = {});

// Minimum conductance |∂S| / min(vol S, vol V∖S) over proper nonempty S.
// The returned set is the side with the smaller volume.
ConductanceCut brute_min_conductance(const MultiGraph& g, OracleBudget budget = {16, 100'000'000});

// Deletes exactly p-1 tree edges lying in the subtrees T(u) for u in U
// (the edge above u included), at least one per subtree, so that every
// vertex of `minelts` ends up below some deleted edge. Minimizes the cut
// value of the resulting tree components in g.
AncestorCut brute_min_ancestor_cut(const MultiGraph& g, const RootedTree& t,
                                   const std::vector<Vertex>& U,
                                   const std::vector<Vertex>& minelts, int p,
                                   OracleBudget budget = {});

// Largest number of edges induced by an r-vertex subset.
int max_edges_among(const MultiGraph& g, int r, OracleBudget budget = {});

}  // namespace kcut
