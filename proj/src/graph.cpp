#include "kcut/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kcut {

MultiGraph::MultiGraph(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    labels_.resize(n);
    std::iota(labels_.begin(), labels_.end(), 0);
    adj_.resize(n);
}

MultiGraph MultiGraph::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    MultiGraph g(n);
    for (auto [u, v] : pairs) g.add_edge(u, v);
    return g;
}

Vertex MultiGraph::add_vertex(int label) {
    labels_.push_back(label);
    adj_.emplace_back();
    return num_vertices() - 1;
}

void MultiGraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= num_vertices()) throw std::invalid_argument("unknown vertex " + std::to_string(v));
}

EdgeId MultiGraph::add_edge(Vertex u, Vertex v) {
    EdgeId id = next_id_;
    add_edge_with_id(id, u, v);
    return id;
}

void MultiGraph::add_edge_with_id(EdgeId id, Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop");
    if (!edges_.empty() && id <= edges_.back().id) throw std::invalid_argument("edge ids must increase");
    int pos = num_edges();
    edges_.push_back({id, u, v});
    adj_[u].push_back(pos);
    adj_[v].push_back(pos);
    next_id_ = std::max(next_id_, id + 1);
}

int MultiGraph::find_edge(EdgeId id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, EdgeId x) { return e.id < x; });
    if (it == edges_.end() || it->id != id) return -1;
    return static_cast<int>(it - edges_.begin());
}

int MultiGraph::min_degree() const {
    int d = num_vertices() == 0 ? 0 : degree(0);
    for (Vertex v = 1; v < num_vertices(); ++v) d = std::min(d, degree(v));
    return d;
}

bool MultiGraph::is_simple() const {
    std::vector<int> seen(num_vertices(), -1);
    for (Vertex v = 0; v < num_vertices(); ++v) {
        for (int pos : adj_[v]) {
            Vertex w = edges_[pos].other(v);
            if (seen[w] == v) return false;
            seen[w] = v;
        }
    }
    return true;
}

std::vector<int> Partition::block_of(int n) const {
    std::vector<int> b(n, -1);
    for (int i = 0; i < k(); ++i) {
        if (blocks[i].empty()) throw std::invalid_argument("empty block");
        for (Vertex v : blocks[i]) {
            if (v < 0 || v >= n) throw std::invalid_argument("block vertex out of range");
            if (b[v] != -1) throw std::invalid_argument("overlapping blocks");
            b[v] = i;
        }
    }
    for (int x : b)
        if (x == -1) throw std::invalid_argument("partition does not cover all vertices");
    return b;
}

Partition Partition::from_labels(const std::vector<int>& label) {
    std::vector<int> remap;
    Partition p;
    for (Vertex v = 0; v < static_cast<int>(label.size()); ++v) {
        int l = label[v];
        if (l < 0) throw std::invalid_argument("negative block label");
        if (l >= static_cast<int>(remap.size())) remap.resize(l + 1, -1);
        if (remap[l] == -1) {
            remap[l] = p.k();
            p.blocks.emplace_back();
        }
        p.blocks[remap[l]].push_back(v);
    }
    return p;
}

ContractionMap ContractionMap::identity(int n) {
    ContractionMap m;
    m.to.resize(n);
    std::iota(m.to.begin(), m.to.end(), 0);
    m.size = n;
    return m;
}

ContractionMap ContractionMap::then(const ContractionMap& next) const {
    ContractionMap m;
    m.size = next.size;
    m.to.resize(to.size());
    for (size_t i = 0; i < to.size(); ++i) m.to[i] = next.to[to[i]];
    return m;
}

Partition ContractionMap::pull_back(const Partition& p) const {
    std::vector<int> b = p.block_of(size);
    std::vector<int> label(to.size());
    for (size_t i = 0; i < to.size(); ++i) label[i] = b[to[i]];
    Partition out = Partition::from_labels(label);
    if (out.k() != p.k()) throw std::invalid_argument("contraction map is not surjective");
    return out;
}

KCutSolution make_solution(const MultiGraph& g, Partition p, std::string provenance) {
    KCutSolution s;
    s.cut_edges = cut_edges(g, p);
    s.value = static_cast<int64_t>(s.cut_edges.size());
    s.partition = std::move(p);
    s.provenance = std::move(provenance);
    return s;
}

std::pair<MultiGraph, ContractionMap> contract_groups(const MultiGraph& g,
                                                      const std::vector<int>& group) {
    if (static_cast<int>(group.size()) != g.num_vertices())
        throw std::invalid_argument("group vector size mismatch");
    int groups = 0;
    for (int x : group) {
        if (x < 0) throw std::invalid_argument("negative group");
        groups = std::max(groups, x + 1);
    }
    std::vector<int> label(groups, -1);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        int& l = label[group[v]];
        l = l == -1 ? g.label(v) : std::min(l, g.label(v));
    }
    MultiGraph h;
    for (int i = 0; i < groups; ++i) {
        if (label[i] == -1) throw std::invalid_argument("unused group index");
        h.add_vertex(label[i]);
    }
    for (const Edge& e : g.edges()) {
        int a = group[e.u], b = group[e.v];
        if (a != b) h.add_edge_with_id(e.id, a, b);
    }
    return {std::move(h), ContractionMap{group, groups}};
}

std::pair<MultiGraph, ContractionMap> contract(const MultiGraph& g, Vertex u, Vertex v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) throw std::invalid_argument("cannot contract a vertex with itself");
    Vertex lo = std::min(u, v), hi = std::max(u, v);
    std::vector<int> group(g.num_vertices());
    for (Vertex w = 0; w < g.num_vertices(); ++w) group[w] = w < hi ? w : w - 1;
    group[hi] = lo;
    return contract_groups(g, group);
}

std::pair<MultiGraph, std::vector<Vertex>> induced_subgraph(const MultiGraph& g,
                                                            const std::vector<Vertex>& keep) {
    std::vector<int> idx(g.num_vertices(), -1);
    MultiGraph h;
    for (Vertex v : keep) {
        g.check_vertex(v);
        if (idx[v] != -1) throw std::invalid_argument("duplicate vertex in subgraph");
        idx[v] = h.add_vertex(g.label(v));
    }
    for (const Edge& e : g.edges())
        if (idx[e.u] >= 0 && idx[e.v] >= 0) h.add_edge_with_id(e.id, idx[e.u], idx[e.v]);
    return {std::move(h), keep};
}

std::pair<MultiGraph, std::vector<Vertex>> remove_vertex(const MultiGraph& g, Vertex v) {
    g.check_vertex(v);
    std::vector<Vertex> keep;
    for (Vertex w = 0; w < g.num_vertices(); ++w)
        if (w != v) keep.push_back(w);
    return induced_subgraph(g, keep);
}

std::vector<EdgeId> cut_edges(const MultiGraph& g, const Partition& p) {
    std::vector<int> b = p.block_of(g.num_vertices());
    std::vector<EdgeId> out;
    for (const Edge& e : g.edges())
        if (b[e.u] != b[e.v]) out.push_back(e.id);
    return out;
}

int64_t cut_value(const MultiGraph& g, const Partition& p) {
    return static_cast<int64_t>(cut_edges(g, p).size());
}

std::vector<EdgeId> boundary(const MultiGraph& g, const std::vector<std::vector<Vertex>>& sets) {
    std::vector<int> b(g.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
        for (Vertex v : sets[i]) {
            g.check_vertex(v);
            if (b[v] != -1) throw std::invalid_argument("overlapping sets");
            b[v] = i;
        }
    }
    std::vector<EdgeId> out;
    for (const Edge& e : g.edges()) {
        if (b[e.u] == -1 && b[e.v] == -1) continue;
        if (b[e.u] != b[e.v]) out.push_back(e.id);
    }
    return out;
}

StCut min_st_cut(const MultiGraph& g, Vertex s, Vertex t, int limit) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) throw std::invalid_argument("source equals sink");
    const int n = g.num_vertices();
    // flow[pos] is +1 when a unit goes u -> v, -1 for v -> u.
    std::vector<int> flow(g.num_edges(), 0);
    std::vector<int> via(n);
    std::vector<Vertex> queue;
    queue.reserve(n);
    int value = 0;
    auto residual = [&](int pos, Vertex from) {
        const Edge& e = g.edge_at(pos);
        return from == e.u ? 1 - flow[pos] : 1 + flow[pos];
    };
    while (true) {
        std::fill(via.begin(), via.end(), -2);
        via[s] = -1;
        queue.clear();
        queue.push_back(s);
        for (size_t head = 0; head < queue.size() && via[t] == -2; ++head) {
            Vertex w = queue[head];
            for (int pos : g.incident(w)) {
                Vertex x = g.edge_at(pos).other(w);
                if (via[x] != -2 || residual(pos, w) <= 0) continue;
                via[x] = pos;
                queue.push_back(x);
            }
        }
        if (via[t] == -2) break;
        for (Vertex x = t; x != s;) {
            int pos = via[x];
            const Edge& e = g.edge_at(pos);
            Vertex from = e.other(x);
            flow[pos] += from == e.u ? 1 : -1;
            x = from;
        }
        ++value;
        if (limit >= 0 && value > limit) return {value, {}};
    }
    StCut cut;
    cut.value = value;
    for (Vertex v = 0; v < n; ++v)
        if (via[v] != -2) cut.source_side.push_back(v);
    return cut;
}

Partition connected_components(const MultiGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> comp(n, -1);
    std::vector<Vertex> stack;
    int c = 0;
    for (Vertex r = 0; r < n; ++r) {
        if (comp[r] != -1) continue;
        comp[r] = c;
        stack.push_back(r);
        while (!stack.empty()) {
            Vertex w = stack.back();
            stack.pop_back();
            for (int pos : g.incident(w)) {
                Vertex x = g.edge_at(pos).other(w);
                if (comp[x] == -1) {
                    comp[x] = c;
                    stack.push_back(x);
                }
            }
        }
        ++c;
    }
    return Partition::from_labels(comp);
}

bool is_connected(const MultiGraph& g) { return connected_components(g).k() <= 1; }

namespace {
int find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
}
}  // namespace

std::vector<int> high_connectivity_classes(const MultiGraph& g, int lambda) {
    const int n = g.num_vertices();
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    // Vertices in different groups are separated by a cut of size <= lambda;
    // union-find classes inside a group have connectivity > lambda.
    std::vector<std::vector<Vertex>> work;
    if (n > 0) {
        work.emplace_back(n);
        std::iota(work.back().begin(), work.back().end(), 0);
    }
    std::vector<char> side(n);
    while (!work.empty()) {
        std::vector<Vertex> grp = std::move(work.back());
        work.pop_back();
        Vertex s = find(uf, grp[0]), t = -1;
        for (Vertex v : grp) {
            if (find(uf, v) != s) {
                t = find(uf, v);
                break;
            }
        }
        if (t == -1) continue;
        StCut c = min_st_cut(g, s, t, lambda);
        if (c.value > lambda) {
            uf[t] = s;
            work.push_back(std::move(grp));
            continue;
        }
        std::fill(side.begin(), side.end(), 0);
        for (Vertex v : c.source_side) side[v] = 1;
        std::vector<Vertex> a, b;
        for (Vertex v : grp) (side[v] ? a : b).push_back(v);
        work.push_back(std::move(a));
        work.push_back(std::move(b));
    }
    std::vector<int> cls(n, -1), id_of_root(n, -1);
    int next = 0;
    for (Vertex v = 0; v < n; ++v) {
        int r = find(uf, v);
        if (id_of_root[r] == -1) id_of_root[r] = next++;
        cls[v] = id_of_root[r];
    }
    return cls;
}

}  // namespace kcut
