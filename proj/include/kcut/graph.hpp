#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kcut {

using Vertex = int;
using EdgeId = int;

struct Edge {
    EdgeId id;
    Vertex u;
    Vertex v;
    Vertex other(Vertex w) const { return w == u ? v : u; }
};

// Unweighted multigraph on dense vertices 0..n-1. Every edge keeps its id
// through contraction and subgraph extraction, and every vertex carries a
// label naming it in the original input (a contracted vertex takes the
// smallest label of its group). Edges are kept sorted by id.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n);

    // Edges get ids 0..m-1 in the given order.
    static MultiGraph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    Vertex add_vertex(int label);
    EdgeId add_edge(Vertex u, Vertex v);
    // Ids must be added in ascending order.
    void add_edge_with_id(EdgeId id, Vertex u, Vertex v);

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge_at(int pos) const { return edges_[pos]; }
    // Position of the edge with this id, or -1.
    int find_edge(EdgeId id) const;
    bool has_edge(EdgeId id) const { return find_edge(id) >= 0; }

    // Positions (into edges()) of the edges incident to v.
    const std::vector<int>& incident(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    int min_degree() const;
    int label(Vertex v) const { return labels_[v]; }
    const std::vector<int>& labels() const { return labels_; }
    void set_label(Vertex v, int label) { labels_[v] = label; }
    // Next id handed out by add_edge.
    EdgeId next_id() const { return next_id_; }

    bool is_simple() const;
    void check_vertex(Vertex v) const;

private:
    std::vector<int> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    EdgeId next_id_ = 0;
};

struct Partition {
    std::vector<std::vector<Vertex>> blocks;

    int k() const { return static_cast<int>(blocks.size()); }
    // Block index of every vertex; throws invalid_argument unless the blocks
    // are nonempty, disjoint and cover 0..n-1.
    std::vector<int> block_of(int n) const;
    // Builds blocks from a block index per vertex; blocks are ordered by their
    // smallest vertex and each block is sorted.
    static Partition from_labels(const std::vector<int>& label);
};

// Assignment of every original vertex to a vertex of a contracted graph.
struct ContractionMap {
    std::vector<int> to;
    int size = 0;

    static ContractionMap identity(int n);
    // this first, then next.
    ContractionMap then(const ContractionMap& next) const;
    // Pulls a partition of the contracted graph back to the original vertices.
    Partition pull_back(const Partition& p) const;
};

struct KCutSolution {
    int64_t value = 0;
    Partition partition;
    std::vector<EdgeId> cut_edges;
    std::string provenance;
};

// Scores a partition of g and packages it as a solution.
KCutSolution make_solution(const MultiGraph& g, Partition p, std::string provenance);

// Merges vertices sharing a group index (0..groups-1, every index used).
// Edges inside a group disappear; all others keep their ids.
std::pair<MultiGraph, ContractionMap> contract_groups(const MultiGraph& g,
                                                      const std::vector<int>& group);
// Merges u and v; the merged vertex takes index min(u, v).
std::pair<MultiGraph, ContractionMap> contract(const MultiGraph& g, Vertex u, Vertex v);

// Subgraph induced by `keep`; returns the graph and the old index of each new vertex.
std::pair<MultiGraph, std::vector<Vertex>> induced_subgraph(const MultiGraph& g,
                                                            const std::vector<Vertex>& keep);
// g with the given vertex removed (labels are preserved).
std::pair<MultiGraph, std::vector<Vertex>> remove_vertex(const MultiGraph& g, Vertex v);

int64_t cut_value(const MultiGraph& g, const Partition& p);
std::vector<EdgeId> cut_edges(const MultiGraph& g, const Partition& p);
// Edges with an endpoint in some set but not both endpoints in the same set.
std::vector<EdgeId> boundary(const MultiGraph& g, const std::vector<std::vector<Vertex>>& sets);

struct StCut {
    int value = 0;
    std::vector<Vertex> source_side;
};
// Unit-capacity min s-t cut by BFS augmenting paths. Stops once the flow
// exceeds `limit`, returning limit + 1 and an empty side.
StCut min_st_cut(const MultiGraph& g, Vertex s, Vertex t, int limit = -1);

Partition connected_components(const MultiGraph& g);
bool is_connected(const MultiGraph& g);

// Class index per vertex such that two vertices share a class iff their
// local edge connectivity exceeds lambda. Classes are numbered by their
// smallest vertex.
std::vector<int> high_connectivity_classes(const MultiGraph& g, int lambda);

}  // namespace kcut
