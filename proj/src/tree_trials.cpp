#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kcut/tree_cut.hpp"
#include "tree_cut_internal.hpp"

namespace kcut {

namespace {
uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

TrialRng::TrialRng(uint64_t seed, uint64_t a, uint64_t b, uint64_t c)
    : state_(mix(seed ^ mix(a ^ mix(b ^ mix(c))))) {}

uint64_t TrialRng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double TrialRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int effective_r_cap(const TrialConfig& cfg, int k) {
    if (cfg.r_cap > 0) return cfg.r_cap;
    if (k <= 16) return std::max(k, 1);
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
}

Hld build_hld(const RootedTree& t) {
    const int n = t.size();
    Hld h;
    h.heavy.assign(n, -1);
    h.branch_of.assign(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        int best = -1;
        for (Vertex c : t.children(v))
            if (best < 0 || t.subtree_size(c) > t.subtree_size(best)) best = c;
        h.heavy[v] = best;
    }
    // A branch starts at every child that is not its parent's heavy child,
    // and at the root's heavy child.
    for (Vertex s : t.preorder()) {
        if (s == t.root()) continue;
        Vertex p = t.parent(s);
        if (h.heavy[p] == s && p != t.root()) continue;
        int id = h.num_branches();
        std::vector<Vertex> seq{p};
        for (Vertex v = s; v >= 0; v = h.heavy[v]) {
            seq.push_back(v);
            h.branch_of[v] = id;
        }
        h.branch_vertices.push_back(std::move(seq));
        h.subroot.push_back(s);
    }
    return h;
}

int branches_on_root_path(const Hld& h, const RootedTree& t, Vertex v) {
    int count = 0, last = -1;
    for (; v != t.root(); v = t.parent(v)) {
        if (h.branch_of[v] != last) ++count;
        last = h.branch_of[v];
    }
    return count;
}

std::vector<EdgeId> Coloring::green_edges() const {
    std::vector<EdgeId> out;
    for (size_t i = 0; i < eprime.size(); ++i)
        if (green[i]) out.push_back(eprime[i]);
    return out;
}

Coloring color_trial(const std::vector<EdgeId>& eprime, int lambda, TrialRng& rng) {
    Coloring c{eprime, std::vector<char>(eprime.size(), 0)};
    double p = 1.0 / std::max(lambda, 1);
    for (auto& x : c.green) x = rng.bernoulli(p);
    return c;
}

std::vector<Coloring> enumerate_colorings(const std::vector<EdgeId>& eprime, int max_green) {
    const int m = static_cast<int>(eprime.size());
    std::vector<Coloring> out;
    for (int size = 0; size <= std::min(max_green, m); ++size) {
        std::vector<int> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            Coloring c{eprime, std::vector<char>(m, 0)};
            for (int i : pick) c.green[i] = 1;
            out.push_back(std::move(c));
            int i = size - 1;
            while (i >= 0 && pick[i] == m - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

ContractedTree contract_branches(const RootedTree& t, const Hld& h, const std::vector<char>& contract) {
    const int n = t.size();
    if (static_cast<int>(contract.size()) != h.num_branches())
        throw std::invalid_argument("one contraction flag per branch expected");
    std::vector<Vertex> top(n);
    for (Vertex v : t.preorder())
        top[v] = (v != t.root() && contract[h.branch_of[v]]) ? top[t.parent(v)] : v;
    // Groups are numbered by their smallest vertex.
    std::vector<int> id(n, -1);
    ContractionMap map;
    map.to.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (id[top[v]] < 0) id[top[v]] = map.size++;
        map.to[v] = id[top[v]];
    }
    std::vector<Edge> edges;
    for (const Edge& e : t.edges())
        if (map.to[e.u] != map.to[e.v]) edges.push_back({e.id, map.to[e.u], map.to[e.v]});
    return {RootedTree::from_edges(map.size, edges, map.to[t.root()]), map};
}

ContractedTree branch_contraction_trial(const RootedTree& t, const Hld& h, TrialRng& rng) {
    int lg = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(t.size(), 2)))));
    std::vector<char> flags(h.num_branches());
    for (auto& f : flags) f = rng.bernoulli(1.0 / lg);
    return contract_branches(t, h, flags);
}

std::vector<EdgeId> eprime_edges(const MultiGraph& g, const RootedTree& t, Vertex x) {
    std::vector<EdgeId> out;
    for (const Edge& e : g.edges())
        if (t.precedes(x, e.u) && t.precedes(x, e.v) && !t.comparable(e.u, e.v)) out.push_back(e.id);
    return out;
}

namespace detail {

NodeView make_view(const RootedTree& t, Vertex x, const std::vector<char>& contracted) {
    const int n = t.size();
    NodeView v;
    v.x = x;
    v.top.assign(n, -1);
    v.rc_of.assign(n, -1);
    const auto& pre = t.preorder();
    for (int i = t.tin(x); i < t.tout(x); ++i) {
        Vertex w = pre[i];
        if (w == x) {
            v.top[w] = x;
            continue;
        }
        Vertex p = t.parent(w);
        v.top[w] = contracted[w] ? v.top[p] : w;
        if (v.top[w] == x) continue;
        if (v.top[w] == w && v.top[p] == x) {
            v.rc_of[w] = w;
            v.root_children.push_back(w);
        } else {
            v.rc_of[w] = v.rc_of[p];
        }
    }
    std::sort(v.root_children.begin(), v.root_children.end());
    return v;
}

std::vector<Vertex> minimal_elements(const RootedTree& t, std::vector<Vertex> vs) {
    std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return t.tin(a) < t.tin(b); });
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<Vertex> out;
    for (Vertex v : vs) {
        bool dominated = false;
        for (Vertex u : out) dominated = dominated || t.precedes(u, v);
        if (!dominated) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CandidateSet> groups_from_view(const RootedTree& t, const NodeView& v, const std::vector<Edge>& green) {
    const auto& rcs = v.root_children;
    const int r = static_cast<int>(rcs.size());
    auto index = [&](Vertex u) { return static_cast<int>(std::lower_bound(rcs.begin(), rcs.end(), u) - rcs.begin()); };
    std::vector<int> uf(r);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    std::vector<std::vector<Vertex>> cand(r);
    std::vector<std::vector<EdgeId>> touching(r);
    for (const Edge& e : green) {
        if (!t.precedes(v.x, e.u) || !t.precedes(v.x, e.v)) continue;
        Vertex ra = v.rc_of[e.u], rb = v.rc_of[e.v];
        if (ra == rb) continue;
        if (ra >= 0) {
            cand[index(ra)].push_back(v.top[e.u]);
            touching[index(ra)].push_back(e.id);
        }
        if (rb >= 0) {
            cand[index(rb)].push_back(v.top[e.v]);
            touching[index(rb)].push_back(e.id);
        }
        if (ra >= 0 && rb >= 0) uf[find(index(ra))] = find(index(rb));
    }
    std::vector<int> slot(r, -1);
    std::vector<CandidateSet> out;
    for (int i = 0; i < r; ++i) {
        int root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        CandidateSet& c = out[slot[root]];
        c.U.push_back(rcs[i]);
        c.minelts.insert(c.minelts.end(), cand[i].begin(), cand[i].end());
        c.green_edges.insert(c.green_edges.end(), touching[i].begin(), touching[i].end());
    }
    for (auto& c : out) {
        c.minelts = minimal_elements(t, c.minelts);
        std::sort(c.green_edges.begin(), c.green_edges.end());
        c.green_edges.erase(std::unique(c.green_edges.begin(), c.green_edges.end()), c.green_edges.end());
    }
    return out;
}

MultiKnapsack knapsack_all(const std::vector<std::vector<int64_t>>& items, int max_target, bool mandatory) {
    const int n = static_cast<int>(items.size());
    std::vector<std::vector<int64_t>> dp(n + 1, std::vector<int64_t>(max_target + 1, kInf));
    std::vector<std::vector<int>> pick(n + 1, std::vector<int>(max_target + 1, 0));
    dp[0][0] = 0;
    for (int i = 0; i < n; ++i) {
        const auto& it = items[i];
        for (int t = 0; t <= max_target; ++t) {
            if (dp[i][t] >= kInf) continue;
            if (!mandatory && dp[i][t] < dp[i + 1][t]) {
                dp[i + 1][t] = dp[i][t];
                pick[i + 1][t] = 0;
            }
            for (int p = 1; t + p <= max_target && p < static_cast<int>(it.size()); ++p) {
                if (it[p] >= kInf) continue;
                int64_t c = dp[i][t] + it[p];
                if (c < dp[i + 1][t + p]) {
                    dp[i + 1][t + p] = c;
                    pick[i + 1][t + p] = p;
                }
            }
        }
    }
    MultiKnapsack r;
    r.value = dp[n];
    r.selection.resize(max_target + 1);
    for (int target = 0; target <= max_target; ++target) {
        if (dp[n][target] >= kInf) continue;
        int t = target;
        for (int i = n; i > 0; --i) {
            int p = pick[i][t];
            if (p > 0) r.selection[target].push_back({i - 1, p});
            t -= p;
        }
        std::reverse(r.selection[target].begin(), r.selection[target].end());
    }
    return r;
}

}  // namespace detail

std::vector<CandidateSet> group_components(const MultiGraph& g, const RootedTree& t, Vertex x,
                                           const std::vector<char>& contracted, const Coloring& coloring) {
    detail::NodeView v = detail::make_view(t, x, contracted);
    std::vector<Edge> green;
    for (EdgeId id : coloring.green_edges()) {
        int pos = g.find_edge(id);
        if (pos < 0) throw std::invalid_argument("colored edge not in graph");
        green.push_back(g.edge_at(pos));
    }
    return detail::groups_from_view(t, v, green);
}

MultiGraph GPrime::as_graph(int n) const {
    MultiGraph h(n);
    for (auto [a, b] : edges) h.add_edge(a, b);
    return h;
}

GPrime build_gprime(const MultiGraph& g, const RootedTree& t, Vertex x, const CandidateSet& c) {
    const int n = t.size();
    std::vector<int> owner(n, -1);
    std::vector<char> in_m(n, 0);
    const auto& pre = t.preorder();
    for (int i = 0; i < static_cast<int>(c.U.size()); ++i)
        for (int j = t.tin(c.U[i]); j < t.tout(c.U[i]); ++j) owner[pre[j]] = i;
    for (Vertex m : c.minelts)
        for (int j = t.tin(m); j < t.tout(m); ++j) in_m[pre[j]] = 1;
    GPrime gp;
    for (const Edge& e : g.edges()) {
        Vertex a = e.u, b = e.v;
        if (!t.precedes(x, a) || !t.precedes(x, b)) continue;
        int oa = owner[a], ob = owner[b];
        if (oa < 0 && ob < 0) continue;
        if (in_m[a] && in_m[b] && t.comparable(a, b)) continue;  // never cut at this level
        if (oa == ob) {
            gp.edges.push_back({a, b});
        } else if (in_m[a] || in_m[b]) {
            ++gp.b_count;  // always cut
        } else {
            if (oa >= 0) gp.edges.push_back({a, x});
            if (ob >= 0) gp.edges.push_back({b, x});
        }
    }
    return gp;
}

KnapsackResult knapsack_combine(const std::vector<std::vector<int64_t>>& items, int target) {
    if (target < 0) return {};
    detail::MultiKnapsack m = detail::knapsack_all(items, target, false);
    return {m.value[target], m.selection[target]};
}

SafeContraction contract_safe_edges(const MultiGraph& g, const RootedTree& t, int lambda,
                                    const std::vector<int>* classes) {
    std::vector<int> own;
    if (!classes) {
        own = high_connectivity_classes(g, lambda);
        classes = &own;
    }
    const int n = g.num_vertices();
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    for (const Edge& e : t.edges())
        if ((*classes)[e.u] == (*classes)[e.v]) uf[find(e.u)] = find(e.v);
    std::vector<int> group(n, -1), id(n, -1);
    int next = 0;
    for (Vertex v = 0; v < n; ++v) {
        int r = find(v);
        if (id[r] < 0) id[r] = next++;
        group[v] = id[r];
    }
    auto [h, map] = contract_groups(g, group);
    std::vector<Edge> edges;
    for (const Edge& e : t.edges())
        if (group[e.u] != group[e.v]) edges.push_back({e.id, group[e.u], group[e.v]});
    RootedTree tt = RootedTree::from_edges(map.size, edges, map.to[t.root()]);
    return {std::move(h), std::move(tt), std::move(map)};
}

std::vector<std::vector<Vertex>> rank_preprocess(const RootedTree& t, Vertex x, int k, const TrialConfig& cfg,
                                                 TrialRng& rng) {
    std::vector<std::vector<Vertex>> out{{}};
    bool on = cfg.rank_preprocess < 0 ? effective_r_cap(cfg, k) < k : cfg.rank_preprocess > 0;
    int size = t.subtree_size(x);
    if (!on || size <= 1) return out;
    // Each candidate forces the root paths of about sqrt(k) random vertices
    // to stay together, which caps how many incomparable cut vertices remain.
    int s = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
    const auto& pre = t.preorder();
    for (int c = 0; c < s; ++c) {
        std::vector<Vertex> pick;
        for (int i = 0; i < s; ++i) pick.push_back(pre[t.tin(x) + 1 + static_cast<int>(rng.below(size - 1))]);
        std::sort(pick.begin(), pick.end());
        pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
        out.push_back(std::move(pick));
    }
    return out;
}

bool is_spider(const RootedTree& t) {
    for (Vertex v = 0; v < t.size(); ++v)
        if (v != t.root() && t.children(v).size() > 1) return false;
    return true;
}

}  // namespace kcut
