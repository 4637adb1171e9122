#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qisurf/mesh.hpp"

namespace qisurf {

// Candidate embedded graph: a subset of mesh vertices joined by recorded
// mesh routes. Skeleton edges all have simplicial length 1; route lengths
// matter only for the embedding geometry.
struct EmbeddedGraph {
    std::vector<int> skel_vertices;                      // mesh vertex ids
    std::vector<std::pair<int, int>> skel_edges;         // indices into skel_vertices
    std::vector<std::vector<int>> routes;                // mesh path per skeleton edge
    std::vector<std::vector<std::pair<int, int>>> adj;   // per skeleton vertex: (neighbor, edge)
    std::vector<int> mesh_to_skel;                       // mesh vertex -> skeleton index or -1
    double separation = 0.0;

    int size() const { return static_cast<int>(skel_vertices.size()); }
    void build_index(int mesh_nv);
    void validate(const SurfaceMesh& mesh) const;
};

inline constexpr int kSkelInf = std::numeric_limits<int>::max();

// Greedy maximal separation-net; edges join net points at mesh distance at
// most 2*separation + step via shortest routes. Deterministic per seed.
EmbeddedGraph build_net(const SurfaceMesh& mesh, double separation, std::uint64_t rng_seed);

// The whole mesh as a skeleton (mesh edges with unit simplicial length).
EmbeddedGraph identity_skeleton(const SurfaceMesh& mesh);

EmbeddedGraph single_vertex_skeleton(const SurfaceMesh& mesh, int mesh_vertex);

// Breadth-first hop count between skeleton vertices (kSkelInf sentinel).
int skeleton_distance(const EmbeddedGraph& g, int u, int v);

std::vector<int> skeleton_bfs(const EmbeddedGraph& g, int source);

struct SamplingPlan {
    enum class Kind { Exhaustive, RandomSources, AnchorBiased } kind = Kind::Exhaustive;
    int source_count = 64;           // Dijkstra sources among skeleton vertices
    std::uint64_t rng_seed = 0;
    std::string name() const;
};

struct QiPairWitness {
    int skel_u = -1, skel_v = -1;    // skeleton indices
    double d_mesh = 0.0;
    int d_skel = 0;
    double slack = 0.0;
};

struct QiReport {
    double M_fixed = 1.0;
    double A_lower = 0.0;       // max over pairs of d_skel - M*d_mesh
    double A_upper_ineq = 0.0;  // max over pairs of d_mesh/M - d_skel
    double A_density = 0.0;     // max over mesh vertices of distance to the skeleton
    double A_min = 0.0;         // max of the three components
    QiPairWitness lower_witness;
    QiPairWitness upper_witness;
    int density_witness_vertex = -1;
    std::string plan;
    long long pairs_evaluated = 0;
};

// Measures the additive slack of the inclusion for fixed M. The density
// component is always exact; pair components are exact under the exhaustive
// plan and lower bounds otherwise.
QiReport estimate_qi_constants(const SurfaceMesh& mesh, const EmbeddedGraph& g, double M,
                               const SamplingPlan& plan);

struct QiCheck {
    bool pass = true;
    std::string failed_clause;  // "lower" | "upper" | "density"
    QiPairWitness pair_witness;
    int density_witness_vertex = -1;
    double density_value = 0.0;
    QiReport report;
};

QiCheck check_qi(const SurfaceMesh& mesh, const EmbeddedGraph& g, double M, double A,
                 const SamplingPlan& plan);

}  // namespace qisurf
