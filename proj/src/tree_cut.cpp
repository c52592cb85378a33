#include "kcut/tree_cut.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "kcut/errors.hpp"
#include "tree_cut_internal.hpp"

namespace kcut {

using Choice = std::vector<std::pair<Vertex, int>>;

namespace {

int64_t state_at(const StateTable& st, Vertex v, int p) {
    return p < static_cast<int>(st.value[v].size()) ? st.value[v][p] : kInf;
}

// Costs M[p] (p = 0..maxp) of spending p deletions inside T(u) alone.
struct SubTable {
    std::vector<int64_t> cost;
    std::vector<Choice> choice;
};

class SubtreeSolver {
public:
    SubtreeSolver(const GPrime& gp, const RootedTree& t, Vertex u, const std::vector<Vertex>& minelts,
                  const StateTable& st, int maxp, int r_cap, int budget)
        : t_(t), u_(u), st_(st), maxp_(maxp), r_cap_(r_cap), budget_(budget) {
        const int n = t.size();
        in_m_.assign(n, 0);
        for (Vertex m : minelts)
            if (t.precedes(u, m)) in_m_[m] = 1;
        for (auto [a, b] : gp.edges) {
            bool ia = t.precedes(u, a), ib = t.precedes(u, b);
            if (ia && ib) edges_.push_back({a, b});
            else if (ia) edges_.push_back({a, -1});
            else if (ib) edges_.push_back({b, -1});
        }
        label_.assign(n, -1);
        result_.cost.assign(maxp + 1, kInf);
        result_.choice.assign(maxp + 1, {});
    }

    SubTable solve() {
        std::vector<Vertex> sel;
        if (!enumerate(t_.tin(u_), sel)) {
            result_.cost.assign(maxp_ + 1, kInf);
            result_.choice.assign(maxp_ + 1, {});
            tree_dp();
        }
        return result_;
    }

private:
    // Antichain enumeration in preorder; returns false once over budget.
    bool enumerate(int pos, std::vector<Vertex>& sel) {
        const auto& pre = t_.preorder();
        if (pos == t_.tout(u_)) {
            if (sel.empty()) return true;
            if (++evaluated_ > budget_) return false;
            evaluate(sel);
            return true;
        }
        Vertex v = pre[pos];
        if (static_cast<int>(sel.size()) < std::min(r_cap_, maxp_)) {
            sel.push_back(v);
            bool ok = enumerate(t_.tout(v), sel);
            sel.pop_back();
            if (!ok) return false;
        }
        // A minimal element skipped here can no longer be covered.
        if (!in_m_[v]) return enumerate(pos + 1, sel);
        return true;
    }

    void evaluate(const std::vector<Vertex>& sel) {
        const auto& pre = t_.preorder();
        for (int i = t_.tin(u_); i < t_.tout(u_); ++i) label_[pre[i]] = -1;
        for (int j = 0; j < static_cast<int>(sel.size()); ++j)
            for (int i = t_.tin(sel[j]); i < t_.tout(sel[j]); ++i) label_[pre[i]] = j;
        int64_t bd = 0;
        for (auto [a, b] : edges_) bd += label_[a] != (b < 0 ? -1 : label_[b]);
        // Split the budget among the selected vertices (at least 1 each).
        const int s = static_cast<int>(sel.size());
        std::vector<std::vector<int64_t>> conv(s + 1, std::vector<int64_t>(maxp_ + 1, kInf));
        std::vector<std::vector<int>> take(s + 1, std::vector<int>(maxp_ + 1, 0));
        conv[0][0] = 0;
        for (int j = 0; j < s; ++j)
            for (int q = 0; q <= maxp_; ++q) {
                if (conv[j][q] >= kInf) continue;
                for (int c = 1; q + c <= maxp_; ++c) {
                    int64_t sv = state_at(st_, sel[j], c);
                    if (sv >= kInf) continue;
                    if (conv[j][q] + sv < conv[j + 1][q + c]) {
                        conv[j + 1][q + c] = conv[j][q] + sv;
                        take[j + 1][q + c] = c;
                    }
                }
            }
        for (int p = s; p <= maxp_; ++p) {
            if (conv[s][p] >= kInf || bd + conv[s][p] >= result_.cost[p]) continue;
            result_.cost[p] = bd + conv[s][p];
            Choice ch(s);
            for (int j = s, q = p; j > 0; --j) {
                ch[j - 1] = {sel[j - 1], take[j][q]};
                q -= take[j][q];
            }
            result_.choice[p] = std::move(ch);
        }
    }

    // Charges every selected vertex its own boundary, which can only
    // overcount the union of boundaries.
    void tree_dp() {
        const auto& pre = t_.preorder();
        const int lo = t_.tin(u_), hi = t_.tout(u_);
        std::vector<int64_t> own(hi - lo, 0);
        for (int i = lo; i < hi; ++i) {
            Vertex v = pre[i];
            for (auto [a, b] : edges_) own[i - lo] += t_.precedes(v, a) != (b >= 0 && t_.precedes(v, b));
        }
        dp_.assign(hi - lo, std::vector<int64_t>(maxp_ + 1, kInf));
        has_m_.assign(hi - lo, 0);
        for (int i = hi - 1; i >= lo; --i) {
            Vertex v = pre[i];
            auto& d = dp_[i - lo];
            bool any = in_m_[v];
            for (Vertex c : t_.children(v)) any = any || has_m_[t_.tin(c) - lo];
            has_m_[i - lo] = any;
            for (int p = 1; p <= maxp_; ++p) {
                int64_t sv = state_at(st_, v, p);
                if (sv < kInf) d[p] = own[i - lo] + sv;
            }
            if (!in_m_[v]) {
                std::vector<int64_t> acc = children_combination(v, nullptr, -1);
                for (int p = 0; p <= maxp_; ++p) d[p] = std::min(d[p], acc[p]);
            }
            if (!any) d[0] = 0;
        }
        for (int p = 1; p <= maxp_; ++p) {
            result_.cost[p] = dp_[0][p];
            if (dp_[0][p] < kInf) rebuild(u_, p, result_.choice[p]);
        }
    }

    // Min-plus combination over the children of v; with `split` set, also
    // recovers the per-child budgets for the given target.
    std::vector<int64_t> children_combination(Vertex v, std::vector<int>* split, int target) {
        const int lo = t_.tin(u_);
        const auto& ch = t_.children(v);
        std::vector<std::vector<int64_t>> acc(ch.size() + 1, std::vector<int64_t>(maxp_ + 1, kInf));
        std::vector<std::vector<int>> give(ch.size() + 1, std::vector<int>(maxp_ + 1, 0));
        acc[0][0] = 0;
        for (size_t j = 0; j < ch.size(); ++j) {
            const auto& d = dp_[t_.tin(ch[j]) - lo];
            for (int q = 0; q <= maxp_; ++q) {
                if (acc[j][q] >= kInf) continue;
                for (int c = 0; q + c <= maxp_; ++c) {
                    if (d[c] >= kInf) continue;
                    if (acc[j][q] + d[c] < acc[j + 1][q + c]) {
                        acc[j + 1][q + c] = acc[j][q] + d[c];
                        give[j + 1][q + c] = c;
                    }
                }
            }
        }
        if (split) {
            split->assign(ch.size(), 0);
            for (size_t j = ch.size(), q = target; j > 0; --j) {
                (*split)[j - 1] = give[j][q];
                q -= give[j][q];
            }
        }
        return acc[ch.size()];
    }

    void rebuild(Vertex v, int p, Choice& out) {
        if (p == 0) return;
        const int lo = t_.tin(u_);
        int64_t sv = state_at(st_, v, p);
        int64_t own = 0;
        for (auto [a, b] : edges_) own += t_.precedes(v, a) != (b >= 0 && t_.precedes(v, b));
        if (sv < kInf && own + sv == dp_[t_.tin(v) - lo][p]) {
            out.push_back({v, p});
            return;
        }
        std::vector<int> split;
        children_combination(v, &split, p);
        const auto& ch = t_.children(v);
        for (size_t j = 0; j < ch.size(); ++j) rebuild(ch[j], split[j], out);
    }

    const RootedTree& t_;
    Vertex u_;
    const StateTable& st_;
    int maxp_, r_cap_, budget_;
    int evaluated_ = 0;
    std::vector<char> in_m_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<int> label_;
    std::vector<std::vector<int64_t>> dp_;
    std::vector<char> has_m_;
    SubTable result_;
};

struct GroupTable {
    std::vector<int64_t> f;
    std::vector<Choice> choice;
};

GroupTable group_table(const GPrime& gp, const RootedTree& t, const CandidateSet& c, const StateTable& st,
                       int maxp, int r_cap, int budget) {
    std::vector<SubTable> subs;
    std::vector<std::vector<int64_t>> items;
    for (Vertex u : c.U) {
        subs.push_back(SubtreeSolver(gp, t, u, c.minelts, st, maxp, r_cap, budget).solve());
        items.push_back(subs.back().cost);
    }
    detail::MultiKnapsack mk = detail::knapsack_all(items, maxp, true);
    GroupTable g;
    g.f.assign(maxp + 1, kInf);
    g.choice.assign(maxp + 1, {});
    for (int p = 1; p <= maxp; ++p) {
        if (mk.value[p] >= kInf) continue;
        g.f[p] = mk.value[p] + gp.b_count;
        for (auto [i, q] : mk.selection[p])
            g.choice[p].insert(g.choice[p].end(), subs[i].choice[q].begin(), subs[i].choice[q].end());
    }
    return g;
}

double combinations_up_to(int n, int r) {
    double total = 0, c = 1;
    for (int i = 0; i <= std::min(n, r); ++i) {
        total += c;
        c = c * (n - i) / (i + 1);
    }
    return total;
}

// Calls f on every subset of {0..n-1} with at most r elements.
void for_each_subset(int n, int r, const std::function<void(const std::vector<int>&)>& f) {
    for (int size = 0; size <= std::min(n, r); ++size) {
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            f(pick);
            int i = size - 1;
            while (i >= 0 && pick[i] == n - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
}

class NodeSolver {
public:
    NodeSolver(const MultiGraph& g, const RootedTree& t, const Hld& h, StateTable& st, Vertex x, int k, int lambda,
               const TrialConfig& cfg)
        : g_(g), t_(t), h_(h), st_(st), x_(x), k_(k), lambda_(lambda), cfg_(cfg) {
        r_cap_ = effective_r_cap(cfg, k);
        for (EdgeId id : eprime_edges(g, t, x)) eprime_.push_back(g.edge_at(g.find_edge(id)));
        const auto& pre = t.preorder();
        for (int i = t.tin(x) + 1; i < t.tout(x); ++i) branches_.push_back(h.branch_of[pre[i]]);
        std::sort(branches_.begin(), branches_.end());
        branches_.erase(std::unique(branches_.begin(), branches_.end()), branches_.end());
    }

    void run() {
        TrialRng rank_rng(cfg_.seed, static_cast<uint64_t>(x_), 0x7261, 0);
        auto candidates = rank_preprocess(t_, x_, k_, cfg_, rank_rng);
        for (size_t ci = 0; ci < candidates.size(); ++ci) {
            std::vector<char> forced(t_.size(), 0);
            for (Vertex v : candidates[ci])
                for (Vertex w = v; w != x_; w = t_.parent(w)) forced[w] = 1;
            run_candidate(forced, ci);
        }
    }

private:
    void run_candidate(const std::vector<char>& forced, size_t candidate) {
        const int nb = static_cast<int>(branches_.size());
        const int ne = static_cast<int>(eprime_.size());
        std::vector<char> contracted(forced);
        trial(contracted, {});
        double estimate = combinations_up_to(nb, k_ - 1) * combinations_up_to(ne, k_ - 2);
        bool enumerate = cfg_.exhaustive || (ne <= cfg_.exhaustive_eprime_cap && nb <= cfg_.exhaustive_branch_cap &&
                                             estimate <= cfg_.max_enumerated_trials);
        const auto& pre = t_.preorder();
        if (enumerate) {
            std::vector<char> open(h_.num_branches(), 0);
            for_each_subset(nb, k_ - 1, [&](const std::vector<int>& w) {
                for (int i : w) open[branches_[i]] = 1;
                for (int i = t_.tin(x_) + 1; i < t_.tout(x_); ++i) {
                    Vertex v = pre[i];
                    contracted[v] = forced[v] || !open[h_.branch_of[v]];
                }
                for (int i : w) open[branches_[i]] = 0;
                detail::NodeView view = detail::make_view(t_, x_, contracted);
                // Only edges between different subtrees can change groups.
                std::vector<Edge> cross;
                for (const Edge& e : eprime_) {
                    Vertex a = view.rc_of[e.u], b = view.rc_of[e.v];
                    if (a >= 0 && b >= 0 && a != b) cross.push_back(e);
                }
                for_each_subset(static_cast<int>(cross.size()), k_ - 2, [&](const std::vector<int>& gi) {
                    std::vector<Edge> green;
                    for (int i : gi) green.push_back(cross[i]);
                    trial_view(view, green);
                });
            });
            return;
        }
        int lg = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(t_.size(), 2)))));
        double want = std::pow(4.0 * std::max(lambda_, 1), k_) * std::log(t_.size() + 1.0);
        int count = static_cast<int>(std::min<double>(std::ceil(want), std::max(cfg_.trials, 0)));
        std::vector<char> closed(h_.num_branches(), 0);
        for (int j = 0; j < count; ++j) {
            TrialRng rng(cfg_.seed, static_cast<uint64_t>(x_), static_cast<uint64_t>(j), candidate);
            for (int b : branches_) closed[b] = rng.bernoulli(1.0 / lg);
            for (int i = t_.tin(x_) + 1; i < t_.tout(x_); ++i) {
                Vertex v = pre[i];
                contracted[v] = forced[v] || closed[h_.branch_of[v]];
            }
            std::vector<Edge> green;
            for (const Edge& e : eprime_)
                if (rng.bernoulli(1.0 / std::max(lambda_, 1))) green.push_back(e);
            trial(contracted, green);
        }
    }

    void trial(const std::vector<char>& contracted, const std::vector<Edge>& green) {
        trial_view(detail::make_view(t_, x_, contracted), green);
    }

    void trial_view(const detail::NodeView& view, const std::vector<Edge>& green) {
        auto groups = detail::groups_from_view(t_, view, green);
        std::vector<std::vector<int64_t>> items;
        std::vector<const GroupTable*> tables;
        for (const auto& c : groups) {
            std::vector<int> key(c.U.begin(), c.U.end());
            key.push_back(-1);
            key.insert(key.end(), c.minelts.begin(), c.minelts.end());
            auto it = cache_.find(key);
            if (it == cache_.end()) {
                GPrime gp = build_gprime(g_, t_, x_, c);
                it = cache_.emplace(std::move(key), group_table(gp, t_, c, st_, k_ - 1, r_cap_, cfg_.selection_budget))
                         .first;
            }
            tables.push_back(&it->second);
            items.push_back(it->second.f);
        }
        detail::MultiKnapsack mk = detail::knapsack_all(items, k_ - 1, false);
        for (int kp = 2; kp <= k_; ++kp) {
            int64_t v = mk.value[kp - 1];
            if (v >= st_.value[x_][kp]) continue;
            st_.value[x_][kp] = v;
            Choice ch;
            for (auto [i, p] : mk.selection[kp - 1])
                ch.insert(ch.end(), tables[i]->choice[p].begin(), tables[i]->choice[p].end());
            st_.choice[x_][kp] = std::move(ch);
        }
    }

    const MultiGraph& g_;
    const RootedTree& t_;
    const Hld& h_;
    StateTable& st_;
    Vertex x_;
    int k_, lambda_;
    const TrialConfig& cfg_;
    int r_cap_;
    std::vector<Edge> eprime_;
    std::vector<int> branches_;
    std::map<std::vector<int>, GroupTable> cache_;
};

}  // namespace

std::vector<Vertex> StateTable::reconstruct(Vertex x, int kp) const {
    std::vector<Vertex> out;
    if (kp <= 1) return out;
    for (auto [s, ks] : choice[x][kp]) {
        out.push_back(s);
        auto sub = reconstruct(s, ks);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

int64_t eval_f_p(const GPrime& gp, const RootedTree& t, const CandidateSet& c, int p, const StateTable& states,
                 int r_cap, int selection_budget) {
    if (p < 1) return kInf;
    GroupTable g = group_table(gp, t, c, states, p, r_cap, selection_budget);
    return g.f[p];
}

int64_t eval_f(const GPrime& gp, const RootedTree& t, const CandidateSet& c) {
    int64_t total = gp.b_count;
    for (Vertex u : c.U) {
        int64_t best = kInf;
        const auto& pre = t.preorder();
        for (int i = t.tin(u); i < t.tout(u); ++i) {
            Vertex s = pre[i];
            bool ok = true;
            for (Vertex m : c.minelts) ok = ok && (!t.precedes(u, m) || t.precedes(s, m));
            if (!ok) continue;
            int64_t bd = 0;
            for (auto [a, b] : gp.edges) bd += t.precedes(s, a) != t.precedes(s, b);
            best = std::min(best, bd);
        }
        if (best >= kInf) return kInf;
        total += best;
    }
    return total;
}

StateTable fill_states(const MultiGraph& g, const RootedTree& t, int k, int lambda, const TrialConfig& cfg) {
    if (t.size() != g.num_vertices()) throw std::invalid_argument("tree and graph sizes differ");
    if (k < 1) throw std::invalid_argument("k must be positive");
    const int n = t.size();
    StateTable st;
    st.k = k;
    st.value.assign(n, std::vector<int64_t>(k + 1, kInf));
    st.choice.assign(n, std::vector<Choice>(k + 1));
    Hld h = build_hld(t);
    const auto& pre = t.preorder();
    for (int i = n - 1; i >= 0; --i) {
        Vertex x = pre[i];
        st.value[x][0] = 0;
        if (k >= 1) st.value[x][1] = 0;
        if (t.is_leaf(x) || k < 2) continue;
        NodeSolver(g, t, h, st, x, k, lambda, cfg).run();
    }
    return st;
}

std::optional<Partition> best_tree_partition(const MultiGraph& g, const RootedTree& t, int k, int lambda,
                                             const TrialConfig& cfg) {
    if (k == 1) return Partition::from_labels(std::vector<int>(t.size(), 0));
    if (t.size() < k) return std::nullopt;
    StateTable st = fill_states(g, t, k, lambda, cfg);
    if (st.value[t.root()][k] >= kInf) return std::nullopt;
    return t.split_at(st.reconstruct(t.root(), k));
}

KCutSolution tree_cut(const MultiGraph& g, const RootedTree& t, int lambda, int k, const TrialConfig& cfg) {
    if (t.size() != g.num_vertices()) throw std::invalid_argument("tree and graph sizes differ");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k > g.num_vertices()) throw InfeasibleError("k exceeds the number of vertices");
    SafeContraction sc = contract_safe_edges(g, t, lambda);
    if (auto p = best_tree_partition(sc.graph, sc.tree, k, lambda, cfg))
        return make_solution(g, sc.map.pull_back(*p), "treecut");
    // Too few edges survived the contraction; fall back to the full tree.
    auto p = best_tree_partition(g, t, k, lambda, cfg);
    return make_solution(g, *p, "treecut");
}

KCutSolution spider_tree_cut(const MultiGraph& g, const RootedTree& t, int lambda, int k, const TrialConfig& cfg) {
    if (!is_spider(t)) throw std::invalid_argument("tree is not a spider");
    if (t.size() != g.num_vertices()) throw std::invalid_argument("tree and graph sizes differ");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k == 1) return make_solution(g, Partition::from_labels(std::vector<int>(t.size(), 0)), "spider");
    const Vertex r = t.root();
    if (k - 1 > static_cast<int>(t.children(r).size()))
        throw InfeasibleError("a spider cut deletes at most one edge per leg");
    std::vector<EdgeId> eprime = eprime_edges(g, t, r);
    std::vector<Coloring> colorings;
    const int ne = static_cast<int>(eprime.size());
    if (cfg.exhaustive ||
        (ne <= cfg.exhaustive_eprime_cap && combinations_up_to(ne, k - 2) <= cfg.max_enumerated_trials)) {
        colorings = enumerate_colorings(eprime, k - 2);
    } else {
        colorings.push_back({eprime, std::vector<char>(ne, 0)});
        double want = std::pow(4.0 * std::max(lambda, 1), k) * std::log(t.size() + 1.0);
        int count = static_cast<int>(std::min<double>(std::ceil(want), std::max(cfg.trials, 0)));
        for (int j = 0; j < count; ++j) {
            TrialRng rng(cfg.seed, static_cast<uint64_t>(r), static_cast<uint64_t>(j), 0x5);
            colorings.push_back(color_trial(eprime, lambda, rng));
        }
    }
    std::vector<char> none(t.size(), 0);
    int64_t best = kInf;
    std::vector<Vertex> best_cut;
    for (const Coloring& col : colorings) {
        auto groups = group_components(g, t, r, none, col);
        std::vector<std::vector<int64_t>> items;
        std::vector<std::vector<Vertex>> picks;
        for (const auto& c : groups) {
            GPrime gp = build_gprime(g, t, r, c);
            const int size = static_cast<int>(c.U.size());
            std::vector<int64_t> item(size + 1, kInf);
            std::vector<Vertex> pick;
            int64_t total = gp.b_count;
            const auto& pre = t.preorder();
            for (Vertex u : c.U) {
                int64_t bu = kInf;
                Vertex arg = -1;
                for (int i = t.tin(u); i < t.tout(u); ++i) {
                    Vertex s = pre[i];
                    bool ok = true;
                    for (Vertex m : c.minelts) ok = ok && (!t.precedes(u, m) || t.precedes(s, m));
                    if (!ok) continue;
                    int64_t bd = 0;
                    for (auto [a, b] : gp.edges) bd += t.precedes(s, a) != t.precedes(s, b);
                    if (bd < bu) bu = bd, arg = s;
                }
                total = (bu >= kInf || total >= kInf) ? kInf : total + bu;
                pick.push_back(arg);
            }
            item[size] = total;
            items.push_back(std::move(item));
            picks.push_back(std::move(pick));
        }
        KnapsackResult kr = knapsack_combine(items, k - 1);
        if (kr.value >= best) continue;
        best = kr.value;
        best_cut.clear();
        for (auto [i, p] : kr.selection) best_cut.insert(best_cut.end(), picks[i].begin(), picks[i].end());
    }
    if (best >= kInf) throw InfeasibleError("no spider cut found");
    return make_solution(g, t.split_at(best_cut), "spider");
}

}  // namespace kcut
