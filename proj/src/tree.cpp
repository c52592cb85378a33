#include "kcut/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace kcut {

RootedTree RootedTree::from_edges(int n, const std::vector<Edge>& edges, Vertex root) {
    if (n <= 0) throw std::invalid_argument("tree needs at least one vertex");
    if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
    if (static_cast<int>(edges.size()) != n - 1) throw std::invalid_argument("tree must have n-1 edges");
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(n);
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw std::invalid_argument("bad tree edge");
        adj[e.u].push_back({e.v, e.id});
        adj[e.v].push_back({e.u, e.id});
    }
    RootedTree t;
    t.root_ = root;
    t.parent_.assign(n, -2);
    t.parent_edge_.assign(n, 0);
    t.depth_.assign(n, 0);
    t.children_.assign(n, {});
    t.parent_[root] = -1;
    std::vector<Vertex> order{root};
    for (size_t i = 0; i < order.size(); ++i) {
        Vertex w = order[i];
        for (auto [x, id] : adj[w]) {
            if (x == t.parent_[w] && id == t.parent_edge_[w]) continue;
            if (t.parent_[x] != -2) throw std::invalid_argument("tree edges contain a cycle");
            t.parent_[x] = w;
            t.parent_edge_[x] = id;
            t.depth_[x] = t.depth_[w] + 1;
            t.children_[w].push_back(x);
            order.push_back(x);
        }
    }
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("tree does not span");
    for (auto& c : t.children_) std::sort(c.begin(), c.end());

    t.tin_.assign(n, 0);
    t.tout_.assign(n, 0);
    t.preorder_.reserve(n);
    std::vector<std::pair<Vertex, size_t>> stack{{root, 0}};
    t.tin_[root] = 0;
    t.preorder_.push_back(root);
    while (!stack.empty()) {
        auto& [w, i] = stack.back();
        if (i < t.children_[w].size()) {
            Vertex x = t.children_[w][i++];
            t.tin_[x] = static_cast<int>(t.preorder_.size());
            t.preorder_.push_back(x);
            stack.push_back({x, 0});
        } else {
            t.tout_[w] = static_cast<int>(t.preorder_.size());
            stack.pop_back();
        }
    }
    t.parent_edge_[root] = 0;
    for (Vertex v = 0; v < n; ++v)
        if (v != root) t.edges_.push_back({t.parent_edge_[v], t.parent_[v], v});
    std::sort(t.edges_.begin(), t.edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    return t;
}

RootedTree RootedTree::from_ids(const MultiGraph& g, const std::vector<EdgeId>& ids, Vertex root) {
    std::vector<Edge> edges;
    edges.reserve(ids.size());
    for (EdgeId id : ids) {
        int pos = g.find_edge(id);
        if (pos < 0) throw std::invalid_argument("tree edge id not in graph");
        edges.push_back(g.edge_at(pos));
    }
    return from_edges(g.num_vertices(), edges, root);
}

std::vector<EdgeId> RootedTree::edge_ids() const {
    std::vector<EdgeId> ids;
    ids.reserve(edges_.size());
    for (const Edge& e : edges_) ids.push_back(e.id);
    return ids;
}

Vertex RootedTree::child_of_edge(EdgeId id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, EdgeId x) { return e.id < x; });
    if (it == edges_.end() || it->id != id) return -1;
    return it->v;
}

Partition RootedTree::split_at(const std::vector<Vertex>& cut_children) const {
    const int n = size();
    std::vector<char> cut(n, 0);
    for (Vertex c : cut_children) {
        if (c < 0 || c >= n || c == root_) throw std::invalid_argument("cut vertex has no parent edge");
        cut[c] = 1;
    }
    std::vector<int> label(n);
    for (Vertex v : preorder_) label[v] = (v == root_ || cut[v]) ? v : label[parent_[v]];
    return Partition::from_labels(label);
}

}  // namespace kcut
