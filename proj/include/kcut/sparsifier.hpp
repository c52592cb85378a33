#pragma once

#include <optional>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/oracles.hpp"

namespace kcut {

struct NIResult {
    MultiGraph subgraph;
    std::vector<std::vector<EdgeId>> forests;
};

// Union of `lambda` iterated maximal spanning forests (fewer if the edges
// run out). Every cut of size <= lambda keeps its exact size.
NIResult ni_sparsify(const MultiGraph& g, int lambda);

// Repeatedly drops vertices of h whose degree falls below 2/5 of their
// degree in `reference`. Vertices are matched by label.
MultiGraph trim(const MultiGraph& h, const MultiGraph& reference);

// Core of a component c of a subgraph of `reference`: removes loose regular
// vertices (degree in c at most half their reference degree), then returns
// nothing if what remains carries at most a quarter of c's reference volume.
// Returns vertex indices of c. `is_super` flags reference vertices that are
// supervertices (never loose); empty means all regular.
std::vector<Vertex> shave_scrap_core(const MultiGraph& c, const MultiGraph& reference,
                                     const std::vector<char>& is_super = {});

enum class ConductanceMode { exact, spectral };

struct ConductanceOptions {
    // Components up to this size are solved exactly in exact mode.
    int exact_cap = 20;
    // A sweep cut is accepted when its conductance is <= sweep_slack * gamma.
    double sweep_slack = 1.0;
};

// A set of conductance <= gamma (or the sweep's relaxed bound), or nothing
// when c is certified or judged a gamma-expander. The set is the side with
// the smaller volume.
std::optional<ConductanceCut> low_conductance_cut(const MultiGraph& c, double gamma, ConductanceMode mode,
                                                  ConductanceOptions opt = {});

struct KTParams {
    int alpha = 1;
    // 0 picks the default from the current edge count each iteration.
    double gamma = 0;
    double spectral_constant = 1.0;
    double trim_fraction = 0.4;
    double loose_fraction = 0.5;
    double scrap_fraction = 0.25;
    double stop_fraction = 0.05;
    ConductanceMode mode = ConductanceMode::exact;
    int exact_cap = 20;
    int max_iterations = 1000;
};

// Default gamma for a graph with m edges.
double kt_default_gamma(int64_t m, ConductanceMode mode, double spectral_constant = 1.0);

struct KTIteration {
    int edges_before = 0;
    int edges_after = 0;
    int cut_edges = 0;
    int supervertices = 0;
    int cores = 0;
    double gamma = 0;
    double passive_fraction = 0;
};

struct KTResult {
    MultiGraph contracted;
    ContractionMap map;
    std::vector<KTIteration> iterations;
};

KTResult kt_sparsify(const MultiGraph& g, const KTParams& params);

}  // namespace kcut
