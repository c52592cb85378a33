#include "kcut/sparsifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace kcut {

namespace {

int uf_find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
}

bool below(double lhs, double fraction, double rhs) { return lhs + 1e-9 < fraction * rhs; }
bool at_most(double lhs, double fraction, double rhs) { return lhs <= fraction * rhs + 1e-9; }

// Reference vertex index of every vertex of h, matched by label.
std::vector<Vertex> match_labels(const MultiGraph& h, const MultiGraph& reference) {
    std::unordered_map<int, Vertex> at;
    for (Vertex v = 0; v < reference.num_vertices(); ++v) at[reference.label(v)] = v;
    std::vector<Vertex> out(h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        auto it = at.find(h.label(v));
        if (it == at.end()) throw std::invalid_argument("vertex label missing from reference graph");
        out[v] = it->second;
    }
    return out;
}

// A subgraph H of a fixed graph, tracked by alive flags.
struct View {
    const MultiGraph* g;
    std::vector<char> alive_v, alive_e;
    std::vector<int> deg;

    explicit View(const MultiGraph& base) : g(&base) {
        alive_v.assign(base.num_vertices(), 1);
        alive_e.assign(base.num_edges(), 1);
        deg.resize(base.num_vertices());
        for (Vertex v = 0; v < base.num_vertices(); ++v) deg[v] = base.degree(v);
    }

    void drop_edge(int pos) {
        if (!alive_e[pos]) return;
        alive_e[pos] = 0;
        --deg[g->edge_at(pos).u];
        --deg[g->edge_at(pos).v];
    }

    void drop_vertex(Vertex v) {
        alive_v[v] = 0;
        for (int pos : g->incident(v)) drop_edge(pos);
    }

    // `ref_deg` gives the degree each vertex is compared against.
    void trim(const std::vector<int>& ref_deg, double fraction) {
        std::vector<Vertex> queue;
        for (Vertex v = 0; v < g->num_vertices(); ++v)
            if (alive_v[v] && below(deg[v], fraction, ref_deg[v])) queue.push_back(v);
        while (!queue.empty()) {
            Vertex v = queue.back();
            queue.pop_back();
            if (!alive_v[v]) continue;
            alive_v[v] = 0;
            for (int pos : g->incident(v)) {
                if (!alive_e[pos]) continue;
                drop_edge(pos);
                Vertex w = g->edge_at(pos).other(v);
                if (alive_v[w] && below(deg[w], fraction, ref_deg[w])) queue.push_back(w);
            }
        }
    }

    std::vector<std::vector<Vertex>> components() const {
        const int n = g->num_vertices();
        std::vector<char> seen(n, 0);
        std::vector<std::vector<Vertex>> out;
        for (Vertex r = 0; r < n; ++r) {
            if (!alive_v[r] || seen[r]) continue;
            seen[r] = 1;
            std::vector<Vertex> comp{r};
            for (size_t i = 0; i < comp.size(); ++i) {
                for (int pos : g->incident(comp[i])) {
                    if (!alive_e[pos]) continue;
                    Vertex w = g->edge_at(pos).other(comp[i]);
                    if (!seen[w]) {
                        seen[w] = 1;
                        comp.push_back(w);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    // H[comp] as a standalone graph (edge ids kept) with its vertex list.
    MultiGraph extract(const std::vector<Vertex>& comp) const {
        std::vector<int> idx(g->num_vertices(), -1);
        MultiGraph c;
        for (Vertex v : comp) idx[v] = c.add_vertex(g->label(v));
        for (int pos = 0; pos < g->num_edges(); ++pos) {
            const Edge& e = g->edge_at(pos);
            if (alive_e[pos] && idx[e.u] >= 0 && idx[e.v] >= 0) c.add_edge_with_id(e.id, idx[e.u], idx[e.v]);
        }
        return c;
    }
};

// Core of component `comp` of H inside gbar; indices are gbar vertices.
std::vector<Vertex> core_of(const MultiGraph& gbar, const std::vector<Vertex>& comp,
                            const std::vector<int>& deg_in_c, const std::vector<char>& is_super,
                            double loose_fraction, double scrap_fraction) {
    std::vector<char> in_c(gbar.num_vertices(), 0), in_a(gbar.num_vertices(), 0);
    for (Vertex v : comp) in_c[v] = 1;
    std::vector<Vertex> a;
    for (size_t i = 0; i < comp.size(); ++i) {
        Vertex v = comp[i];
        bool loose = !is_super[v] && at_most(deg_in_c[i], loose_fraction, gbar.degree(v));
        if (!loose) {
            a.push_back(v);
            in_a[v] = 1;
        }
    }
    int64_t vol_a = 0, vol_c = 0;
    for (Vertex v : comp) {
        vol_c += gbar.degree(v);
        if (!in_a[v]) continue;
        for (int pos : gbar.incident(v)) vol_a += in_c[gbar.edge_at(pos).other(v)];
    }
    if (at_most(static_cast<double>(vol_a), scrap_fraction, static_cast<double>(vol_c))) return {};
    return a;
}

std::optional<ConductanceCut> exact_cut(const MultiGraph& c, double gamma) {
    const int n = c.num_vertices();
    const int64_t total = 2 * static_cast<int64_t>(c.num_edges());
    std::vector<char> in(n, 0);
    int64_t vol = 0, cut = 0;
    bool have = false;
    Ratio best;
    std::vector<char> best_in;
    // Gray-code walk over subsets of {1..n-1}.
    const uint64_t steps = uint64_t{1} << (n - 1);
    for (uint64_t i = 1; i < steps; ++i) {
        Vertex v = 1 + __builtin_ctzll(i);
        int64_t to_s = 0;
        for (int pos : c.incident(v)) to_s += in[c.edge_at(pos).other(v)];
        if (in[v]) {
            in[v] = 0;
            vol -= c.degree(v);
            cut -= c.degree(v) - 2 * to_s;
        } else {
            in[v] = 1;
            vol += c.degree(v);
            cut += c.degree(v) - 2 * to_s;
        }
        int64_t den = std::min(vol, total - vol);
        if (den == 0) continue;
        Ratio r{cut, den};
        if (!have || r < best) {
            have = true;
            best = r;
            best_in = in;
        }
    }
    if (!have || best.value() > gamma + 1e-12) return std::nullopt;
    int64_t v_in = 0;
    for (Vertex v = 0; v < n; ++v)
        if (best_in[v]) v_in += c.degree(v);
    bool flip = v_in > total - v_in;
    ConductanceCut out;
    out.conductance = best;
    for (Vertex v = 0; v < n; ++v)
        if (static_cast<bool>(best_in[v]) != flip) out.set.push_back(v);
    return out;
}

std::optional<ConductanceCut> spectral_cut(const MultiGraph& c, double gamma, double slack) {
    const int n = c.num_vertices();
    const int64_t total = 2 * static_cast<int64_t>(c.num_edges());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd isd(n);
    for (Vertex v = 0; v < n; ++v) isd[v] = c.degree(v) > 0 ? 1.0 / std::sqrt(c.degree(v)) : 0.0;
    for (const Edge& e : c.edges()) {
        double w = isd[e.u] * isd[e.v];
        lap(e.u, e.v) -= w;
        lap(e.v, e.u) -= w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    if (es.info() != Eigen::Success) return std::nullopt;
    double lambda2 = es.eigenvalues()[1];
    if (lambda2 >= 2 * gamma) return std::nullopt;
    Eigen::VectorXd y = isd.asDiagonal() * es.eigenvectors().col(1);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return y[a] < y[b]; });
    std::vector<char> in(n, 0);
    int64_t vol = 0, cut = 0;
    bool have = false;
    Ratio best;
    int best_len = 0;
    for (int i = 0; i + 1 < n; ++i) {
        Vertex v = order[i];
        int64_t to_s = 0;
        for (int pos : c.incident(v)) to_s += in[c.edge_at(pos).other(v)];
        in[v] = 1;
        vol += c.degree(v);
        cut += c.degree(v) - 2 * to_s;
        int64_t den = std::min(vol, total - vol);
        if (den == 0) continue;
        Ratio r{cut, den};
        if (!have || r < best) {
            have = true;
            best = r;
            best_len = i + 1;
        }
    }
    if (!have || best.value() > slack * gamma + 1e-12) return std::nullopt;
    std::vector<char> side(n, 0);
    int64_t v_in = 0;
    for (int i = 0; i < best_len; ++i) {
        side[order[i]] = 1;
        v_in += c.degree(order[i]);
    }
    bool flip = v_in > total - v_in;
    ConductanceCut out;
    out.conductance = best;
    for (Vertex v = 0; v < n; ++v)
        if (static_cast<bool>(side[v]) != flip) out.set.push_back(v);
    return out;
}

}  // namespace

NIResult ni_sparsify(const MultiGraph& g, int lambda) {
    if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
    if (!g.is_simple()) throw std::invalid_argument("sparsification needs a simple graph");
    const int n = g.num_vertices();
    std::vector<int> rest(g.num_edges());
    std::iota(rest.begin(), rest.end(), 0);
    std::vector<char> keep(g.num_edges(), 0);
    NIResult out;
    std::vector<int> uf(n);
    for (int round = 0; round < lambda && !rest.empty(); ++round) {
        std::iota(uf.begin(), uf.end(), 0);
        std::vector<int> next;
        std::vector<EdgeId> forest;
        for (int pos : rest) {
            const Edge& e = g.edge_at(pos);
            int a = uf_find(uf, e.u), b = uf_find(uf, e.v);
            if (a == b) {
                next.push_back(pos);
                continue;
            }
            uf[a] = b;
            forest.push_back(e.id);
            keep[pos] = 1;
        }
        out.forests.push_back(std::move(forest));
        rest = std::move(next);
    }
    for (Vertex v = 0; v < n; ++v) out.subgraph.add_vertex(g.label(v));
    for (int pos = 0; pos < g.num_edges(); ++pos) {
        const Edge& e = g.edge_at(pos);
        if (keep[pos]) out.subgraph.add_edge_with_id(e.id, e.u, e.v);
    }
    return out;
}

MultiGraph trim(const MultiGraph& h, const MultiGraph& reference) {
    std::vector<Vertex> ref = match_labels(h, reference);
    View view(h);
    std::vector<int> ref_deg(h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) ref_deg[v] = reference.degree(ref[v]);
    view.trim(ref_deg, 0.4);
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < h.num_vertices(); ++v)
        if (view.alive_v[v]) kept.push_back(v);
    return induced_subgraph(h, kept).first;
}

std::vector<Vertex> shave_scrap_core(const MultiGraph& c, const MultiGraph& reference,
                                     const std::vector<char>& is_super) {
    std::vector<Vertex> ref = match_labels(c, reference);
    std::vector<char> sup = is_super;
    sup.resize(reference.num_vertices(), 0);
    std::vector<Vertex> comp(ref);
    std::vector<int> deg_in_c(c.num_vertices());
    for (Vertex v = 0; v < c.num_vertices(); ++v) deg_in_c[v] = c.degree(v);
    std::vector<Vertex> core = core_of(reference, comp, deg_in_c, sup, 0.5, 0.25);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < c.num_vertices(); ++v)
        if (std::find(core.begin(), core.end(), ref[v]) != core.end()) out.push_back(v);
    return out;
}

std::optional<ConductanceCut> low_conductance_cut(const MultiGraph& c, double gamma, ConductanceMode mode,
                                                  ConductanceOptions opt) {
    if (c.num_edges() == 0) throw std::invalid_argument("conductance of an edgeless graph");
    if (!is_connected(c)) throw std::invalid_argument("conductance of a disconnected graph");
    if (mode == ConductanceMode::exact && c.num_vertices() <= opt.exact_cap) return exact_cut(c, gamma);
    return spectral_cut(c, gamma, opt.sweep_slack);
}

double kt_default_gamma(int64_t m, ConductanceMode mode, double spectral_constant) {
    double lg = std::max(1.0, std::log2(static_cast<double>(std::max<int64_t>(m, 1))));
    if (mode == ConductanceMode::exact) return 1.0 / (100.0 * lg);
    return 1.0 / (100.0 * spectral_constant * std::pow(lg, 1.5));
}

KTResult kt_sparsify(const MultiGraph& g, const KTParams& params) {
    KTResult res;
    res.contracted = g;
    res.map = ContractionMap::identity(g.num_vertices());
    const double delta = g.min_degree();
    std::vector<int> originals(g.num_vertices(), 1);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        const MultiGraph& gbar = res.contracted;
        const int n = gbar.num_vertices();
        const int m = gbar.num_edges();
        if (m == 0) break;
        KTIteration st;
        st.edges_before = m;
        double lg = std::max(1.0, std::log2(static_cast<double>(m)));
        st.gamma = params.gamma > 0 ? params.gamma : kt_default_gamma(m, params.mode, params.spectral_constant);
        ConductanceOptions copt;
        copt.exact_cap = params.exact_cap;
        copt.sweep_slack = params.mode == ConductanceMode::spectral ? params.spectral_constant * std::sqrt(lg) : 1.0;

        std::vector<char> is_super(n), passive(n);
        for (Vertex v = 0; v < n; ++v) {
            is_super[v] = originals[v] > 1;
            passive[v] = is_super[v] && gbar.degree(v) <= 3.0 * params.alpha * delta / st.gamma;
        }
        int incident = 0;
        for (const Edge& e : gbar.edges()) incident += passive[e.u] || passive[e.v];
        st.passive_fraction = static_cast<double>(incident) / m;
        if (st.passive_fraction >= params.stop_fraction) break;

        View h(gbar);
        std::vector<int> ref_deg(n);
        for (Vertex v = 0; v < n; ++v) ref_deg[v] = gbar.degree(v);
        for (Vertex v = 0; v < n; ++v)
            if (passive[v]) h.drop_vertex(v);
        h.trim(ref_deg, params.trim_fraction);

        while (true) {
            bool cut_any = false;
            for (const auto& comp : h.components()) {
                MultiGraph c = h.extract(comp);
                if (c.num_edges() == 0) continue;
                auto cut = low_conductance_cut(c, st.gamma, params.mode, copt);
                if (!cut) continue;
                std::vector<char> side(n, 0);
                for (Vertex v : cut->set) side[comp[v]] = 1;
                for (Vertex v : comp) {
                    for (int pos : gbar.incident(v)) {
                        if (!h.alive_e[pos]) continue;
                        const Edge& e = gbar.edge_at(pos);
                        if (side[e.u] != side[e.v]) {
                            h.drop_edge(pos);
                            ++st.cut_edges;
                        }
                    }
                }
                cut_any = true;
            }
            if (!cut_any) break;
            h.trim(ref_deg, params.trim_fraction);
        }

        std::vector<Vertex> rep(n);
        std::iota(rep.begin(), rep.end(), 0);
        bool merged = false;
        for (const auto& comp : h.components()) {
            std::vector<int> deg_in_c;
            for (Vertex v : comp) deg_in_c.push_back(h.deg[v]);
            std::vector<Vertex> core =
                core_of(gbar, comp, deg_in_c, is_super, params.loose_fraction, params.scrap_fraction);
            if (core.size() < 2) continue;
            ++st.cores;
            merged = true;
            for (Vertex v : core) rep[v] = core.front();
        }
        if (merged) {
            std::vector<int> group(n), id(n, -1);
            int next = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (rep[v] == v) id[v] = next++;
                group[v] = id[rep[v]];
            }
            auto [h2, step] = contract_groups(gbar, group);
            std::vector<int> orig2(next, 0);
            for (Vertex v = 0; v < n; ++v) orig2[group[v]] += originals[v];
            originals = std::move(orig2);
            res.map = res.map.then(step);
            res.contracted = std::move(h2);
        }
        st.edges_after = res.contracted.num_edges();
        for (int c : originals) st.supervertices += c > 1;
        res.iterations.push_back(st);
        if (!merged) break;
    }
    return res;
}

}  // namespace kcut
