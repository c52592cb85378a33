#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/solver.hpp"

namespace kcut {

enum class GraphFormat { edgelist, dimacs };

// Throws invalid_argument for unknown names.
GraphFormat parse_format(const std::string& name);

struct NamedGraph {
    MultiGraph graph;
    // Input name of every vertex.
    std::vector<std::string> names;
};

// edgelist: one "u v" pair per line, '#' starts a comment, vertices are
// numbered by first appearance and repeated pairs are parallel edges.
// dimacs: "p edge n m" then "e u v" lines with 1-based vertices; "c" lines
// are comments. Errors raise ParseError with the offending line.
NamedGraph parse_graph(const std::string& text, GraphFormat format);

// Vertices are written 1-based; edgelist output drops isolated vertices.
std::string serialize_graph(const MultiGraph& g, GraphFormat format);

struct CliqueReduction {
    MultiGraph h;
    int64_t expected_value = 0;
};

// g plus a clique on k^2 n new vertices, each original vertex padded to
// degree n with edges to the lowest-indexed clique vertices. The minimum
// k-cut of h is (k-1) n minus the most edges among k-1 vertices of g.
CliqueReduction gen_clique_reduction(const MultiGraph& g, int k);

struct RandomGraphSpec {
    int n = 0;
    // Exactly one of p (each pair independently) or m (edge count) is used;
    // m wins when it is nonnegative.
    double p = 0;
    int64_t m = -1;
    uint64_t seed = 1;
    bool simple = true;
};

MultiGraph gen_random(const RandomGraphSpec& spec);

// Applies a JSON object of overrides; unknown keys and wrong types raise
// invalid_argument.
void apply_config(const std::string& json_text, SolverConfig& cfg);

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kcut
