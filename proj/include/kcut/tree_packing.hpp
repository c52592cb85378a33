#pragma once

#include <vector>

#include "kcut/graph.hpp"
#include "kcut/tree.hpp"

namespace kcut {

struct TreePack {
    std::vector<RootedTree> trees;
    // Number of packed trees using each edge, indexed by edge position in g.
    std::vector<int> loads;
};

// Each tree is a minimum spanning tree under the loads of the trees before
// it, ties broken by ascending edge id. Trees are rooted at vertex 0.
TreePack greedy_tree_packing(const MultiGraph& g, int count);

// c_pack * k^3 * ceil(ln n), at least 1.
int packing_count(int n, int k, int c_pack = 3);

// Tree edges whose endpoints lie in different blocks.
std::vector<EdgeId> crossing_edges(const RootedTree& t, const Partition& p);
// Exactly k-1 crossings, i.e. every block is connected in t.
bool is_tight(const RootedTree& t, const Partition& p);

}  // namespace kcut
