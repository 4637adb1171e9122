#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qisurf/graph.hpp"

namespace qisurf {

struct RotationSystem;

// Closed-surface combinatorics shared by the embedding and mesh layers:
// a weighted primal graph plus its face lists. Provides Z2 homology
// signatures (intersection parity with a dual basis) and disc tests, which
// together decide contractibility of simple cycles.
class SurfaceTopology {
public:
    SurfaceTopology(int vertex_count,
                    std::vector<std::pair<int, int>> edge_list,
                    std::vector<double> weights,
                    std::vector<std::vector<int>> faces_as_edge_lists);

    static SurfaceTopology from_rotation(const RotationSystem& rs,
                                         const std::vector<double>& weights);

    int vertex_count() const { return nv_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(face_edges_.size()); }
    int euler_characteristic() const { return nv_ - edge_count() + face_count(); }
    int genus() const { return (2 - euler_characteristic()) / 2; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<int>& incident(int v) const { return incident_edges_[v]; }

    int edge_between(int u, int v) const;  // -1 if absent
    int edge_other_end(int e, int v) const;

    // Z2 homology class of a cycle given by edge ids; empty class size means
    // genus 0 (every class trivial).
    bool cycle_class_trivial(const std::vector<int>& cycle_edges) const;

    // For a separating simple cycle: true iff one side is a disc (chi == 1).
    // Throws if the sides merge, which cannot happen for separating input.
    bool separating_cycle_bounds_disc(const std::vector<int>& cycle_edges) const;

    // Simple cycle (vertex sequence, closure implied) -> noncontractible?
    bool noncontractible(const std::vector<int>& cycle_vertices) const;

    std::vector<int> cycle_edges_of(const std::vector<int>& cycle_vertices) const;

private:
    void build_signatures();

    int nv_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<double> weights_;
    std::vector<std::vector<int>> face_edges_;
    std::vector<std::vector<int>> incident_edges_;   // per vertex
    std::vector<std::array<int, 2>> edge_faces_;
    int basis_words_ = 0;
    std::vector<std::vector<std::uint64_t>> edge_sig_;
};

struct WeightedCycle {
    double length = 0.0;
    std::vector<int> vertices;  // simple cycle, closure implied
};

// Shortest noncontractible cycle via per-root shortest-path trees and
// non-tree closing edges. Exact for positive weights. An optional seed
// bounds the search from above.
std::optional<WeightedCycle> shortest_noncontractible_search(
    const SurfaceTopology& topo, const std::optional<WeightedCycle>& seed);

}  // namespace qisurf
