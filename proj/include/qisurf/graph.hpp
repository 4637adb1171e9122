#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qisurf/constants.hpp"

namespace qisurf {

// Simple undirected graph. Edges are stored canonically with u < v; the
// adjacency lists are kept sorted so that identical inputs serialize and
// iterate identically.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    Graph() = default;
    explicit Graph(int vertex_count) : n(vertex_count), adj(vertex_count) {}

    int vertex_count() const { return n; }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);
    void sort_adjacency();

    bool is_connected() const;
    bool is_regular(int k) const;

    // Throws Error if a structural invariant is broken (self-loop, parallel
    // edge, asymmetric adjacency, bad counts).
    void validate() const;

    // Edge index lookup, -1 if absent. Linear in degree.
    int edge_index(int u, int v) const;
};

// Closed walk: first vertex equals last. Consecutive vertices are adjacent
// in the host graph.
struct ClosedWalk {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// Edge-disjoint simple cycles partitioning E(F). In a 4-regular graph every
// vertex lies on exactly two distinct cycles.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;              // vertex sequences, closure implied
    std::vector<std::pair<int, int>> vertex_cycles;    // the two cycle indices through each vertex
};

struct GenParams {
    int girth_target = 3;
    int degree = 4;
    int size_hint = 0;
    std::uint64_t rng_seed = 0;
    int max_restarts = 64;
};

inline constexpr int kNoCycle = std::numeric_limits<int>::max();
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Moore lower bound on the vertex count of a degree-4 graph with the given
// girth.
int moore_bound_degree4(int girth);

// Generates a connected 4-regular graph of girth >= params.girth_target.
// Random pairing followed by girth-raising edge swaps for small targets; a
// two-generator circulant search for targets the swap walk cannot reach.
// Deterministic for a fixed seed. Throws Error when the budget is exhausted
// or size_hint is below the Moore bound.
Graph generate_regular_high_girth(const GenParams& params);

// Exact girth via per-vertex breadth-first search; kNoCycle for forests.
int girth(const Graph& g);

// All vertices at hop distance <= t from the given centers. Sorted output.
std::vector<int> neighborhood_ball(const Graph& g, const std::vector<int>& centers, double t);

// Hop distances from a single source (kUnreachable where disconnected).
std::vector<int> bfs_distances(const Graph& g, int source);

// Hierholzer circuit over every edge exactly once. Requires connectivity and
// even degrees.
ClosedWalk eulerian_circuit(const Graph& g);

// Splits an Eulerian circuit at the earliest repeated vertex (stack
// discipline) into edge-disjoint simple cycles covering E(G). Requires a
// connected 4-regular input.
CycleDecomposition cycle_decomposition(const Graph& g);

// Distance between two vertices along a cycle (hops, both directions).
int cycle_distance(const std::vector<int>& cycle, int pos_a, int pos_b);

}  // namespace qisurf
