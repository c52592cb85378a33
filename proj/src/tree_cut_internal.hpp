#pragma once

#include <vector>

#include "kcut/tree_cut.hpp"

namespace kcut::detail {

// T(x) after contracting the tree edges flagged per child vertex.
struct NodeView {
    Vertex x = 0;
    // Topmost vertex of the contracted node holding v (x for x's own node).
    std::vector<Vertex> top;
    // Child of x in the contracted tree whose subtree holds v, or -1.
    std::vector<Vertex> rc_of;
    std::vector<Vertex> root_children;
};

NodeView make_view(const RootedTree& t, Vertex x, const std::vector<char>& contracted);

std::vector<CandidateSet> groups_from_view(const RootedTree& t, const NodeView& v, const std::vector<Edge>& green);

// Keeps the elements of `vs` that have no proper ancestor in `vs`.
std::vector<Vertex> minimal_elements(const RootedTree& t, std::vector<Vertex> vs);

struct MultiKnapsack {
    // value[t] for every target t in 0..max_target, with per-target choices.
    std::vector<int64_t> value;
    std::vector<std::vector<std::pair<int, int>>> selection;
};

MultiKnapsack knapsack_all(const std::vector<std::vector<int64_t>>& items, int max_target, bool mandatory);

}  // namespace kcut::detail
