#include "kcut/tree_packing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kcut {

TreePack greedy_tree_packing(const MultiGraph& g, int count) {
    if (count < 1) throw std::invalid_argument("tree count must be positive");
    if (g.num_vertices() == 0 || !is_connected(g)) throw std::invalid_argument("tree packing needs a connected graph");
    const int n = g.num_vertices();
    const int m = g.num_edges();
    TreePack pack;
    pack.loads.assign(m, 0);
    std::vector<int> order(m), uf(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < count; ++i) {
        // Positions follow id order, so a stable sort by load breaks ties by id.
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return pack.loads[a] < pack.loads[b]; });
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        std::vector<Edge> tree;
        for (int pos : order) {
            const Edge& e = g.edge_at(pos);
            int a = find(e.u), b = find(e.v);
            if (a == b) continue;
            uf[a] = b;
            tree.push_back(e);
            ++pack.loads[pos];
            if (static_cast<int>(tree.size()) == n - 1) break;
        }
        pack.trees.push_back(RootedTree::from_edges(n, tree, 0));
    }
    return pack;
}

int packing_count(int n, int k, int c_pack) {
    double ln = std::ceil(std::log(static_cast<double>(std::max(n, 2))));
    return std::max(1, static_cast<int>(c_pack * k * k * k * ln));
}

std::vector<EdgeId> crossing_edges(const RootedTree& t, const Partition& p) {
    std::vector<int> b = p.block_of(t.size());
    std::vector<EdgeId> out;
    for (const Edge& e : t.edges())
        if (b[e.u] != b[e.v]) out.push_back(e.id);
    return out;
}

bool is_tight(const RootedTree& t, const Partition& p) {
    return static_cast<int>(crossing_edges(t, p).size()) == p.k() - 1;
}

}  // namespace kcut
