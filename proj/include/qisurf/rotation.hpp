#pragma once

#include <optional>
#include <vector>

#include "qisurf/graph.hpp"

namespace qisurf {

// Oriented combinatorial map. Edge i of the underlying graph owns darts 2i
// (first -> second endpoint) and 2i+1 (reverse); pairing is dart ^ 1. The
// per-vertex rotation lists the outgoing darts in clockwise order.
struct RotationSystem {
    Graph graph;
    std::vector<std::vector<int>> rot;

    int dart_count() const { return 2 * graph.edge_count(); }
    int dart_tail(int d) const {
        auto [u, v] = graph.edges[d / 2];
        return (d % 2 == 0) ? u : v;
    }
    int dart_head(int d) const { return dart_tail(d ^ 1); }
    static int dart_pair(int d) { return d ^ 1; }
    int dart_edge(int d) const { return d / 2; }

    // Successor of d in the cyclic order at its tail vertex.
    int rot_next(int d) const;
    int rot_prev(int d) const;

    // Face-tracing successor: pair, then rotate.
    int face_next(int d) const { return rot_next(dart_pair(d)); }

    void validate() const;
};

struct FaceSet {
    std::vector<std::vector<int>> faces;  // closed dart walks
    int face_count() const { return static_cast<int>(faces.size()); }
    // face id containing each dart
    std::vector<int> dart_face;
};

struct SurfaceSummary {
    int vertices = 0;
    int edge_count = 0;
    int faces = 0;
    int euler_characteristic = 0;
    int genus = 0;
    bool orientable = true;
    bool cell_embedding = true;
};

// A planar-style rotation from sorted adjacency; handy for tests and tori.
RotationSystem rotation_from_adjacency(const Graph& g);

// The crossing embedding: at every vertex the two decomposition cycles
// alternate in the rotation, so they cross in the surface. Among the two
// legal alternations the one pairing lowest-index darts first is chosen.
RotationSystem crossing_rotation_system(const Graph& f, const CycleDecomposition& dec);

// True at v iff the two cycles through v alternate in rot[v].
bool crossing_alternates_at(const RotationSystem& rs, const CycleDecomposition& dec, int v);

FaceSet trace_faces(const RotationSystem& rs);

SurfaceSummary surface_summary(const RotationSystem& rs);

// Result of cutting the surface along a simple cycle. Boundary circles are
// traced as faces of the cut-open map, so chi_closed is the Euler
// characteristic with each boundary capped by a disc.
struct CutComponent {
    RotationSystem rs;
    int boundary_circles = 0;
    int chi_closed = 0;
    int chi_with_boundary = 0;
    bool is_disc = false;
};

// Combinatorial cut: duplicates the cycle's vertices and edges on both
// sides and returns the resulting components with Euler data.
std::vector<CutComponent> cut_along_cycle(const RotationSystem& rs, const std::vector<int>& cycle);

// A simple cycle on an orientable surface is contractible iff one side of
// the cut is a disc.
bool is_contractible(const RotationSystem& rs, const std::vector<int>& cycle);

struct SystoleResult {
    bool exists = false;           // false when the surface has genus 0
    double length = 0.0;
    std::vector<int> cycle;        // vertex sequence, closure implied
};

// Shortest non-contractible cycle. Candidates are shortest-path-tree loops
// (root paths plus a non-tree edge) over every root, which is exact for
// undirected positive weights.
SystoleResult shortest_noncontractible_cycle(const RotationSystem& rs,
                                             const std::vector<double>& edge_weights);

}  // namespace qisurf
