#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qisurf/rotation.hpp"
#include "qisurf/topology.hpp"

namespace qisurf {

enum class RegionKind : std::uint8_t { VertexPatch = 0, EdgeStrip = 1, FaceDisc = 2 };

struct MeshParams {
    double epsilon = 1.0;   // target F-edge length scale
    double K = 1.0;         // systole target
    double M = 1.0;         // depth bound scale: boundary depth must exceed 12*M^3
    int strip_width = 2;    // transverse quads per ribbon (even, >= 2)
    double step = 0.5;      // mesh edge length bound
    double face_depth = 13.0;

    double depth_requirement() const;
    void validate() const;
};

// Piecewise-flat stand-in for the ambient surface: every F-edge becomes a
// triangulated grid ribbon, the four ribbons at an F-vertex share a crossing
// patch in rotation order, and each embedding face carries a cylindrical
// well of boundary-offset rings whose deepest ring is the boundary of D,
// capped by a hub outside D.
struct SurfaceMesh {
    int nv = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    std::vector<std::vector<std::pair<int, int>>> adj;  // per vertex: (neighbor, edge id)
    std::vector<std::array<int, 3>> triangles;

    std::vector<RegionKind> region_kind;
    std::vector<int> region_id;        // F-vertex, F-edge, or face id
    std::vector<char> within_d;
    std::vector<char> on_boundary_d;
    std::vector<char> on_rho;
    std::vector<int> owner;            // D(v) owner; -1 outside D

    std::vector<int> anchor;                        // F-vertex -> mesh vertex
    std::vector<std::vector<int>> edge_center_path; // F-edge -> center-line path (canonical u -> v)
    std::vector<std::vector<int>> rho_columns;      // F-edge -> mesh vertices on rho_e
    std::vector<double> realized_edge_length;

    Graph f_graph;
    MeshParams params;
    int embedding_faces = 0;
    int genus = 0;

    int edge_between(int u, int v) const;
    void add_mesh_edge(int u, int v, double w);
    SurfaceTopology topology() const;
};

SurfaceMesh build_surface_mesh(const RotationSystem& rs, const MeshParams& params);

// Exact single-pair shortest-path distance.
double mesh_distance(const SurfaceMesh& mesh, int p, int q);

// Full single-source distances, optionally truncated.
std::vector<double> mesh_dijkstra(const SurfaceMesh& mesh, int source,
                                  double cutoff = -1.0);

struct MultiSourceField {
    std::vector<double> dist;
    std::vector<int> nearest;  // index into the source list
};
MultiSourceField mesh_multi_source(const SurfaceMesh& mesh, const std::vector<int>& sources);

// Shortest path as a vertex sequence (empty when unreachable).
std::vector<int> mesh_shortest_path(const SurfaceMesh& mesh, int from, int to);

struct MetricViolation {
    std::string check;
    int f_vertex = -1;
    int mesh_vertex = -1;
    double value = 0.0;
    double bound = 0.0;
};

struct MetricReport {
    bool edge_lengths_ok = true;
    bool boundary_depth_ok = true;
    bool ball_containment_ok = true;
    double min_edge_length = 0.0;
    double max_edge_length = 0.0;
    double min_boundary_depth = 0.0;
    std::vector<MetricViolation> violations;
    bool ok() const { return edge_lengths_ok && boundary_depth_ok && ball_containment_ok; }
};

// The three metric conditions: realized F-edge lengths within [eps/2, eps];
// anchors further than max(K, 12M^3) from the boundary of D; and for every
// F-vertex v and sampled r, ball(v, r) within D is contained in
// D(N_F^{1+r/eps}[v]).
MetricReport verify_metric_axioms(const SurfaceMesh& mesh, const Graph& f,
                                  const MeshParams& params,
                                  const std::vector<double>& r_samples);

struct MeshSystole {
    bool exists = false;   // false when genus is 0
    double length = 0.0;
    std::vector<int> cycle;  // mesh vertex cycle
};

MeshSystole mesh_systole(const SurfaceMesh& mesh, const RotationSystem& rs);

// Weight quantum: every mesh weight is an integer multiple of this, so path
// sums are exact in double arithmetic whichever order they are added in.
double snap_weight(double w);
double snap_weight_down(double w);

}  // namespace qisurf
