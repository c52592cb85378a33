#include "kcut/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kcut/errors.hpp"

namespace kcut {

namespace {

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    double c = 1;
    for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
}

double stirling2(int n, int k) {
    std::vector<double> row(k + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

// Visits every r-subset of 0..n-1 in lexicographic order.
template <class F>
void for_each_combination(int n, int r, F&& f) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

struct KCutSearch {
    int n, k;
    // back[i]: edges from i to vertices j < i.
    std::vector<std::vector<int>> back;
    std::vector<int> label, best_label;
    int64_t best;

    void run(int i, int used, int64_t cut) {
        if (cut >= best) return;
        if (n - i < k - used) return;
        if (i == n) {
            if (used == k) {
                best = cut;
                best_label = label;
            }
            return;
        }
        int top = std::min(used + 1, k);
        for (int b = 0; b < top; ++b) {
            int64_t add = 0;
            for (int j : back[i]) add += label[j] != b;
            label[i] = b;
            run(i + 1, std::max(used, b + 1), cut + add);
        }
    }
};

}  // namespace

KCutSolution brute_min_kcut(const MultiGraph& g, int k, OracleBudget budget) {
    const int n = g.num_vertices();
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k > n) throw InfeasibleError("k exceeds the number of vertices");
    if (n > budget.max_vertices) throw BudgetError("graph too large for exhaustive k-cut");
    if (stirling2(n, k) > static_cast<double>(budget.max_subsets))
        throw BudgetError("too many partitions to enumerate");
    KCutSearch s{n, k, std::vector<std::vector<int>>(n), std::vector<int>(n, 0), {}, 0};
    for (const Edge& e : g.edges()) s.back[std::max(e.u, e.v)].push_back(std::min(e.u, e.v));
    s.best = static_cast<int64_t>(g.num_edges()) + 1;
    s.run(0, 0, 0);
    return make_solution(g, Partition::from_labels(s.best_label), "oracle");
}

KCutSolution brute_tree_kcut(const MultiGraph& g, const RootedTree& t, int k, OracleBudget budget) {
    const int n = g.num_vertices();
    if (t.size() != n) throw std::invalid_argument("tree does not span the graph");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k - 1 > n - 1) throw InfeasibleError("tree has fewer than k-1 edges");
    if (binomial(n - 1, k - 1) > static_cast<double>(budget.max_subsets))
        throw BudgetError("too many tree edge subsets to enumerate");
    std::vector<Vertex> nonroot;
    for (Vertex v : t.preorder())
        if (v != t.root()) nonroot.push_back(v);
    std::vector<char> cut(n, 0);
    std::vector<int> label(n);
    int64_t best = -1;
    std::vector<Vertex> best_cut;
    std::vector<Vertex> chosen(k - 1);
    for_each_combination(n - 1, k - 1, [&](const std::vector<int>& idx) {
        std::fill(cut.begin(), cut.end(), 0);
        for (int i = 0; i < k - 1; ++i) {
            chosen[i] = nonroot[idx[i]];
            cut[chosen[i]] = 1;
        }
        for (Vertex v : t.preorder()) label[v] = (v == t.root() || cut[v]) ? v : label[t.parent(v)];
        int64_t c = 0;
        for (const Edge& e : g.edges()) c += label[e.u] != label[e.v];
        if (best < 0 || c < best) {
            best = c;
            best_cut = chosen;
        }
    });
    return make_solution(g, t.split_at(best_cut), "tree-oracle");
}

ConductanceCut brute_min_conductance(const MultiGraph& g, OracleBudget budget) {
    const int n = g.num_vertices();
    if (n < 2 || g.num_edges() == 0) throw std::invalid_argument("conductance needs at least one edge");
    if (!is_connected(g)) throw std::invalid_argument("conductance of a disconnected graph");
    if (n > budget.max_vertices) throw BudgetError("graph too large for exhaustive conductance");
    int64_t total = 2 * static_cast<int64_t>(g.num_edges());
    bool have = false;
    Ratio best;
    uint32_t best_mask = 0;
    // Subsets containing vertex 0; each unordered split is seen once.
    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (uint32_t rest = 0; rest < (1u << (n - 1)); ++rest) {
        uint32_t mask = (rest << 1) | 1u;
        if (mask == full) continue;
        int64_t vol = 0, cut = 0;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1) vol += g.degree(v);
        for (const Edge& e : g.edges()) cut += ((mask >> e.u) & 1) != ((mask >> e.v) & 1);
        Ratio r{cut, std::min(vol, total - vol)};
        if (!have || r < best) {
            have = true;
            best = r;
            best_mask = mask;
        }
    }
    int64_t vol = 0;
    for (Vertex v = 0; v < n; ++v)
        if (best_mask >> v & 1) vol += g.degree(v);
    if (vol > total - vol) best_mask = full & ~best_mask;
    ConductanceCut out;
    out.conductance = best;
    for (Vertex v = 0; v < n; ++v)
        if (best_mask >> v & 1) out.set.push_back(v);
    return out;
}

AncestorCut brute_min_ancestor_cut(const MultiGraph& g, const RootedTree& t,
                                   const std::vector<Vertex>& U,
                                   const std::vector<Vertex>& minelts, int p,
                                   OracleBudget budget) {
    const int n = g.num_vertices();
    if (t.size() != n) throw std::invalid_argument("tree does not span the graph");
    const int r = p - 1;
    const int q = static_cast<int>(U.size());
    if (r < q || q == 0) throw InfeasibleError("need at least one deletion per subtree");
    // Candidate deletions are named by their child endpoint.
    std::vector<Vertex> cand;
    std::vector<int> owner;
    for (int i = 0; i < q; ++i) {
        for (int j = t.tin(U[i]); j < t.tout(U[i]); ++j) {
            cand.push_back(t.preorder()[j]);
            owner.push_back(i);
        }
    }
    for (Vertex s : minelts) {
        bool inside = false;
        for (Vertex u : U) inside = inside || t.precedes(u, s);
        if (!inside) throw std::invalid_argument("minimal element outside the candidate subtrees");
    }
    const int c = static_cast<int>(cand.size());
    if (r > c) throw InfeasibleError("not enough tree edges in the subtrees");
    if (binomial(c, r) > static_cast<double>(budget.max_subsets))
        throw BudgetError("too many ancestor cuts to enumerate");
    std::vector<char> cut(n, 0);
    std::vector<int> label(n), per(q);
    int64_t best = -1;
    std::vector<Vertex> best_cut, chosen(r);
    for_each_combination(c, r, [&](const std::vector<int>& idx) {
        std::fill(per.begin(), per.end(), 0);
        for (int i : idx) ++per[owner[i]];
        for (int x : per)
            if (x == 0) return;
        std::fill(cut.begin(), cut.end(), 0);
        for (int i = 0; i < r; ++i) {
            chosen[i] = cand[idx[i]];
            cut[chosen[i]] = 1;
        }
        for (Vertex s : minelts) {
            bool sep = false;
            for (Vertex x = s; x != -1 && !sep; x = t.parent(x)) sep = cut[x];
            if (!sep) return;
        }
        for (Vertex v : t.preorder()) label[v] = (v == t.root() || cut[v]) ? v : label[t.parent(v)];
        int64_t val = 0;
        for (const Edge& e : g.edges()) val += label[e.u] != label[e.v];
        if (best < 0 || val < best) {
            best = val;
            best_cut = chosen;
        }
    });
    if (best < 0) throw InfeasibleError("no feasible ancestor cut");
    AncestorCut out;
    out.value = best;
    for (Vertex v : best_cut) out.deleted.push_back(t.parent_edge(v));
    std::sort(out.deleted.begin(), out.deleted.end());
    return out;
}

int max_edges_among(const MultiGraph& g, int r, OracleBudget budget) {
    const int n = g.num_vertices();
    if (r < 0 || r > n) throw std::invalid_argument("subset size out of range");
    if (n > budget.max_vertices || binomial(n, r) > static_cast<double>(budget.max_subsets))
        throw BudgetError("graph too large for subset enumeration");
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    for (const Edge& e : g.edges()) {
        ++mult[e.u][e.v];
        ++mult[e.v][e.u];
    }
    int best = 0;
    if (r == 0) return 0;
    for_each_combination(n, r, [&](const std::vector<int>& idx) {
        int c = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) c += mult[idx[i]][idx[j]];
        best = std::max(best, c);
    });
    return best;
}

}  // namespace kcut
