#pragma once

#include <random>
#include <utility>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/tree.hpp"

namespace testutil {

inline kcut::MultiGraph path(int n) {
    kcut::MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline kcut::MultiGraph cycle(int n) {
    kcut::MultiGraph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline kcut::MultiGraph complete(int n) {
    kcut::MultiGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

// Two copies of K_n, the i-th bridge joining vertex i of each copy.
inline kcut::MultiGraph twin_cliques(int n, int bridges) {
    kcut::MultiGraph g(2 * n);
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.add_edge(c * n + i, c * n + j);
    for (int i = 0; i < bridges; ++i) g.add_edge(i, n + i);
    return g;
}

// Connected random graph: a random spanning tree plus extra edges, each
// extra edge possibly parallel when `multi` is set.
inline kcut::MultiGraph random_connected(int n, int extra, bool multi, std::mt19937_64& rng) {
    kcut::MultiGraph g(n);
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng() % v);
        g.add_edge(u, v);
        has[u][v] = has[v][u] = 1;
    }
    int tries = 0;
    while (extra > 0 && tries++ < 1000) {
        int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        if (u == v || (!multi && has[u][v])) continue;
        g.add_edge(u, v);
        has[u][v] = has[v][u] = 1;
        --extra;
    }
    return g;
}

inline kcut::RootedTree random_tree(int n, std::mt19937_64& rng) {
    std::vector<kcut::Edge> e;
    for (int v = 1; v < n; ++v) e.push_back({v - 1, static_cast<int>(rng() % v), v});
    return kcut::RootedTree::from_edges(n, e, 0);
}

// A random spanning tree of a connected g (random-order Kruskal).
inline kcut::RootedTree random_spanning_tree(const kcut::MultiGraph& g, std::mt19937_64& rng) {
    std::vector<int> order(g.num_edges());
    for (int i = 0; i < g.num_edges(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> uf(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) uf[i] = i;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::vector<kcut::EdgeId> ids;
    for (int pos : order) {
        const kcut::Edge& e = g.edge_at(pos);
        int a = find(e.u), b = find(e.v);
        if (a == b) continue;
        uf[a] = b;
        ids.push_back(e.id);
    }
    return kcut::RootedTree::from_ids(g, ids, 0);
}

}  // namespace testutil
