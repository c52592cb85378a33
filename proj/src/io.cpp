#include "kcut/io.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kcut/errors.hpp"
#include "kcut/oracles.hpp"

namespace kcut {

GraphFormat parse_format(const std::string& name) {
    if (name == "edgelist") return GraphFormat::edgelist;
    if (name == "dimacs") return GraphFormat::dimacs;
    throw std::invalid_argument("unknown graph format: " + name);
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

int parse_int(const std::string& s, int line) {
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
    if (used != s.size() || v < 0 || v > (1LL << 30)) throw ParseError(line, "expected an integer, got '" + s + "'");
    return static_cast<int>(v);
}

NamedGraph parse_edgelist(const std::string& text) {
    NamedGraph r;
    std::map<std::string, Vertex> index;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::istringstream ss(text);
    int lineno = 0;
    auto vertex = [&](const std::string& name) {
        auto [it, fresh] = index.emplace(name, static_cast<Vertex>(r.names.size()));
        if (fresh) r.names.push_back(name);
        return it->second;
    };
    for (std::string line; std::getline(ss, line);) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        auto tok = tokens_of(line);
        if (tok.empty()) continue;
        if (tok.size() != 2) throw ParseError(lineno, "expected two vertices");
        if (tok[0] == tok[1]) throw ParseError(lineno, "self-loop");
        pairs.push_back({vertex(tok[0]), vertex(tok[1])});
    }
    r.graph = MultiGraph::from_pairs(static_cast<int>(r.names.size()), pairs);
    return r;
}

NamedGraph parse_dimacs(const std::string& text) {
    NamedGraph r;
    std::istringstream ss(text);
    int lineno = 0, n = -1, m = -1, seen = 0;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::string line; std::getline(ss, line);) {
        ++lineno;
        auto tok = tokens_of(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (n >= 0) throw ParseError(lineno, "duplicate problem line");
            if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col"))
                throw ParseError(lineno, "expected 'p edge n m'");
            n = parse_int(tok[2], lineno);
            m = parse_int(tok[3], lineno);
        } else if (tok[0] == "e") {
            if (n < 0) throw ParseError(lineno, "edge before problem line");
            if (tok.size() != 3) throw ParseError(lineno, "expected 'e u v'");
            int u = parse_int(tok[1], lineno), v = parse_int(tok[2], lineno);
            if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex out of range");
            if (u == v) throw ParseError(lineno, "self-loop");
            pairs.push_back({u - 1, v - 1});
            ++seen;
        } else {
            throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
        }
    }
    if (n < 0) throw ParseError(lineno, "missing problem line");
    if (seen != m) throw ParseError(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                                std::to_string(seen));
    r.graph = MultiGraph::from_pairs(n, pairs);
    for (int v = 1; v <= n; ++v) r.names.push_back(std::to_string(v));
    return r;
}

}  // namespace

NamedGraph parse_graph(const std::string& text, GraphFormat format) {
    return format == GraphFormat::edgelist ? parse_edgelist(text) : parse_dimacs(text);
}

std::string serialize_graph(const MultiGraph& g, GraphFormat format) {
    std::ostringstream os;
    if (format == GraphFormat::dimacs) os << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) {
        if (format == GraphFormat::dimacs) os << "e ";
        os << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
    return os.str();
}

CliqueReduction gen_clique_reduction(const MultiGraph& g, int k) {
    const int n = g.num_vertices();
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (k - 1 > n) throw std::invalid_argument("k - 1 exceeds the number of vertices");
    if (!g.is_simple()) throw std::invalid_argument("clique reduction needs a simple graph");
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) > n) throw std::invalid_argument("vertex degree exceeds n");
    const int w = k * k * n;
    CliqueReduction r;
    r.h = MultiGraph(n + w);
    for (const Edge& e : g.edges()) r.h.add_edge(e.u, e.v);
    for (int i = 0; i < w; ++i)
        for (int j = i + 1; j < w; ++j) r.h.add_edge(n + i, n + j);
    for (Vertex v = 0; v < n; ++v)
        for (int i = 0; i < n - g.degree(v); ++i) r.h.add_edge(v, n + i);
    r.expected_value = static_cast<int64_t>(k - 1) * n - max_edges_among(g, k - 1);
    return r;
}

MultiGraph gen_random(const RandomGraphSpec& spec) {
    if (spec.n < 0) throw std::invalid_argument("negative vertex count");
    const int n = spec.n;
    const int64_t pairs = static_cast<int64_t>(n) * (n - 1) / 2;
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    MultiGraph g(n);
    if (spec.m < 0) {
        if (spec.p < 0 || spec.p > 1) throw std::invalid_argument("p must lie in [0, 1]");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (uniform() < spec.p) g.add_edge(i, j);
        return g;
    }
    if (spec.simple && spec.m > pairs) throw std::invalid_argument("too many edges for a simple graph");
    if (spec.m > 0 && n < 2) throw std::invalid_argument("edges need at least two vertices");
    std::vector<std::pair<int, int>> chosen;
    if (spec.simple) {
        // Partial Fisher-Yates over pair indices.
        std::map<int64_t, int64_t> swapped;
        auto at = [&](int64_t i) {
            auto it = swapped.find(i);
            return it == swapped.end() ? i : it->second;
        };
        for (int64_t i = 0; i < spec.m; ++i) {
            int64_t j = i + static_cast<int64_t>(rng() % static_cast<uint64_t>(pairs - i));
            int64_t a = at(i), b = at(j);
            swapped[j] = a;
            swapped[i] = b;
            // Pair index b -> (u, v) with u < v in row-major order.
            int u = 0;
            int64_t rest = b;
            while (rest >= n - 1 - u) rest -= n - 1 - u, ++u;
            chosen.push_back({u, u + 1 + static_cast<int>(rest)});
        }
    } else {
        for (int64_t i = 0; i < spec.m; ++i) {
            int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % (n - 1));
            if (v >= u) ++v;
            chosen.push_back({std::min(u, v), std::max(u, v)});
        }
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto [u, v] : chosen) g.add_edge(u, v);
    return g;
}

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config key '" + key + "' has the wrong type");
    }
}

void apply_kt(const json& j, KTParams& kt) {
    if (!j.is_object()) throw std::invalid_argument("config key 'kt' must be an object");
    for (const auto& [key, v] : j.items()) {
        if (key == "alpha") kt.alpha = get_as<int>(v, key);
        else if (key == "gamma") kt.gamma = get_as<double>(v, key);
        else if (key == "spectral_constant") kt.spectral_constant = get_as<double>(v, key);
        else if (key == "trim_fraction") kt.trim_fraction = get_as<double>(v, key);
        else if (key == "loose_fraction") kt.loose_fraction = get_as<double>(v, key);
        else if (key == "scrap_fraction") kt.scrap_fraction = get_as<double>(v, key);
        else if (key == "stop_fraction") kt.stop_fraction = get_as<double>(v, key);
        else if (key == "exact_cap") kt.exact_cap = get_as<int>(v, key);
        else if (key == "max_iterations") kt.max_iterations = get_as<int>(v, key);
        else if (key == "mode") {
            std::string m = get_as<std::string>(v, key);
            if (m == "exact") kt.mode = ConductanceMode::exact;
            else if (m == "spectral") kt.mode = ConductanceMode::spectral;
            else throw std::invalid_argument("unknown conductance mode: " + m);
        } else {
            throw std::invalid_argument("unknown config key 'kt." + key + "'");
        }
    }
}

void apply_trial(const json& j, TrialConfig& t) {
    if (!j.is_object()) throw std::invalid_argument("config key 'trial' must be an object");
    for (const auto& [key, v] : j.items()) {
        if (key == "seed") t.seed = get_as<uint64_t>(v, key);
        else if (key == "trials") t.trials = get_as<int>(v, key);
        else if (key == "exhaustive") t.exhaustive = get_as<bool>(v, key);
        else if (key == "exhaustive_eprime_cap") t.exhaustive_eprime_cap = get_as<int>(v, key);
        else if (key == "exhaustive_branch_cap") t.exhaustive_branch_cap = get_as<int>(v, key);
        else if (key == "max_enumerated_trials") t.max_enumerated_trials = get_as<int>(v, key);
        else if (key == "r_cap") t.r_cap = get_as<int>(v, key);
        else if (key == "selection_budget") t.selection_budget = get_as<int>(v, key);
        else if (key == "rank_preprocess") t.rank_preprocess = get_as<int>(v, key);
        else throw std::invalid_argument("unknown config key 'trial." + key + "'");
    }
}

}  // namespace

void apply_config(const std::string& json_text, SolverConfig& cfg) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "kt_constant") cfg.kt_constant = get_as<double>(v, key);
        else if (key == "pack_constant") cfg.pack_constant = get_as<int>(v, key);
        else if (key == "oracle_fallback_max_n") cfg.oracle_fallback_max_n = get_as<int>(v, key);
        else if (key == "threads") cfg.threads = get_as<int>(v, key);
        else if (key == "mode") {
            std::string m = get_as<std::string>(v, key);
            if (m == "auto") cfg.mode = SolverMode::automatic;
            else if (m == "treecut") cfg.mode = SolverMode::treecut_only;
            else if (m == "oracle") cfg.mode = SolverMode::oracle_only;
            else throw std::invalid_argument("unknown mode: " + m);
        } else if (key == "kt") apply_kt(v, cfg.kt);
        else if (key == "trial") apply_trial(v, cfg.trial);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (cfg.kt_constant <= 0 || cfg.pack_constant <= 0) throw std::invalid_argument("constants must be positive");
}

}  // namespace kcut
