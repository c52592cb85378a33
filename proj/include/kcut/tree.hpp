#pragma once

#include <vector>

#include "kcut/graph.hpp"

namespace kcut {

// Rooted spanning tree over the vertices of a graph. Tree edges carry the
// ids of graph edges; negative ids mark virtual edges that join the
// components of a disconnected graph and never count toward a cut.
class RootedTree {
public:
    RootedTree() = default;
    // Throws invalid_argument unless `edges` forms a spanning tree on 0..n-1.
    static RootedTree from_edges(int n, const std::vector<Edge>& edges, Vertex root);
    static RootedTree from_ids(const MultiGraph& g, const std::vector<EdgeId>& ids, Vertex root);

    int size() const { return static_cast<int>(parent_.size()); }
    Vertex root() const { return root_; }
    Vertex parent(Vertex v) const { return parent_[v]; }
    EdgeId parent_edge(Vertex v) const { return parent_edge_[v]; }
    int depth(Vertex v) const { return depth_[v]; }
    const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
    bool is_leaf(Vertex v) const { return children_[v].empty(); }
    // Preorder with children visited in ascending id; T(v) occupies
    // preorder()[tin(v) .. tout(v)).
    const std::vector<Vertex>& preorder() const { return preorder_; }
    int tin(Vertex v) const { return tin_[v]; }
    int tout(Vertex v) const { return tout_[v]; }
    int subtree_size(Vertex v) const { return tout_[v] - tin_[v]; }
    // u precedes v iff v lies in T(u); every vertex precedes itself.
    bool precedes(Vertex u, Vertex v) const { return tin_[u] <= tin_[v] && tin_[v] < tout_[u]; }
    bool comparable(Vertex u, Vertex v) const { return precedes(u, v) || precedes(v, u); }

    // Tree edges sorted by id, stored with (parent, child) orientation in u, v.
    const std::vector<Edge>& edges() const { return edges_; }
    std::vector<EdgeId> edge_ids() const;
    // Child endpoint of a tree edge id, or -1.
    Vertex child_of_edge(EdgeId id) const;

    // Components of the forest left after deleting the tree edges whose
    // child endpoints are listed.
    Partition split_at(const std::vector<Vertex>& cut_children) const;

private:
    Vertex root_ = 0;
    std::vector<Vertex> parent_;
    std::vector<EdgeId> parent_edge_;
    std::vector<int> depth_;
    std::vector<std::vector<Vertex>> children_;
    std::vector<Vertex> preorder_;
    std::vector<int> tin_, tout_;
    std::vector<Edge> edges_;
};

}  // namespace kcut
