#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qisurf/qi.hpp"

namespace qisurf {

// Integer working radii for the obstruction argument, derived from the real
// ladder and the mesh edge scale. The structural identities mirror the
// asymptotic constants: near = proj + 1 + sampling slack (840 = 800 + 1 +
// 33M^2 at the asymptotic scale), tree = near + proj (1640 = 840 + 800), and
// the girth gate 2*tree + 2 certifies unique projections.
struct HopLadder {
    int base = 1;
    int proj = 2;
    int near = 4;
    int tree = 6;
    int span = 9;
    int girth_gate = 14;

    static HopLadder derive(const RadiusLadder& ladder, double epsilon);
};

struct CycleSamples {
    int cycle_index = -1;
    std::vector<int> mesh_vertices;  // sample points along the cycle path
    std::vector<int> cycle_pos;      // nearest cycle position per sample
    std::vector<double> arc;         // arc position per sample
    double total_length = 0.0;
};

// Greedy arc-length marching with spacing in [1/2, 1]. Requires the cycle's
// realized length to be at least 2 + 1/epsilon and the mesh columns to be at
// most 1/2 apart.
CycleSamples sample_cycle_points(const SurfaceMesh& mesh, const CycleDecomposition& dec,
                                 int cycle_index);

struct FollowingWalk {
    int cycle_index = -1;
    CycleSamples samples;
    std::vector<int> anchor_skel;         // c* skeleton index per sample
    std::vector<std::vector<int>> legs;   // skeleton paths, legs[j] joins anchors j, j+1
    std::vector<int> walk;                // concatenated walk (each leg minus its end)
    std::vector<int> walk_leg;            // leg index per walk position
    long long total_hops = 0;
    double pigeonhole_bound = 0.0;        // |V(C_i)| / 2
    bool over_length = false;
};

struct ProjectionEntry {
    int walk_pos = -1;
    int sample_idx = -1;
    int projected = -1;       // F-vertex, -1 when no candidate passed
    int candidate_count = 0;
    bool tree_certified = false;
    bool no_owner = false;
};

struct ProjectionMap {
    int cycle_index = -1;
    std::vector<ProjectionEntry> entries;
    std::vector<char> image;  // per F-vertex
    bool all_tree_certified = true;
    bool all_defined = true;
};

struct ObstructionCertificate {
    enum class Kind {
        ContradictionWitness,
        DensityViolation,
        LegViolation,
        WalkTooLong,
        OutOfTheoremRange,
        JordanFailure,
        DiscFailure,
    };
    Kind kind = Kind::OutOfTheoremRange;
    std::string reason;

    // claim and scale
    double M = 1.0, A = 0.0, ladder_R = 1.0, epsilon = 1.0;

    // density payload
    int density_mesh_vertex = -1;
    double density_distance = 0.0, density_bound = 0.0;

    // leg payload (skeleton indices)
    int leg_cycle = -1, leg_index = -1, leg_from = -1, leg_to = -1;
    double leg_mesh_distance = 0.0, leg_bound = 0.0;
    long long leg_skel_distance = 0;

    // walk payload
    int walk_cycle = -1;
    long long walk_length = 0;
    double walk_bound = 0.0;

    // contradiction payload
    int witness_cycle = -1;
    int witness_walk_pos = -1;
    int witness_u_skel = -1;
    int witness_v = -1;
    int witness_z_mesh = -1;
    bool tree_certified = false;
    std::vector<int> gamma1, gamma2;

    static const char* kind_name(Kind k);
};

// Thrown by pipeline stages when a certificate-worthy condition appears.
struct CertificateSignal : Error {
    ObstructionCertificate cert;
    explicit CertificateSignal(ObstructionCertificate c)
        : Error(std::string("certificate: ") + ObstructionCertificate::kind_name(c.kind)),
          cert(std::move(c)) {}
};

// Thrown when two distinct projection candidates pass the containment test.
struct NonUniqueProjection : Error {
    using Error::Error;
};

struct NearestSkeletonResult {
    bool found = false;
    int skel = -1;
    double dist = 0.0;
};

// Nearest skeleton vertex within `bound` (default 3M in the callers). The
// shared multi-source field makes repeated queries cheap.
NearestSkeletonResult nearest_skeleton_vertex(const MultiSourceField& field, int p, double bound);

FollowingWalk build_following_walk(const SurfaceMesh& mesh, const EmbeddedGraph& g,
                                   const CycleDecomposition& dec,
                                   const MultiSourceField& skel_field, const CycleSamples& samples,
                                   double M, double A);

ProjectionMap project_walk(const SurfaceMesh& mesh, const Graph& f, const CycleDecomposition& dec,
                           const EmbeddedGraph& g, const FollowingWalk& walk, const HopLadder& hop);

// Lowest-index vertex avoided by the projections of both of its cycles.
std::optional<int> find_avoided_vertex(const Graph& f, const CycleDecomposition& dec,
                                       const std::vector<ProjectionMap>& projections);

ObstructionCertificate crossing_witness(const SurfaceMesh& mesh, const RotationSystem& rs,
                                        const CycleDecomposition& dec, const EmbeddedGraph& g,
                                        int avoided_v, const std::vector<FollowingWalk>& walks,
                                        const HopLadder& hop);

struct CertifyOptions {
    bool paper_strict = false;  // enforce epsilon <= 1/(33 M^2)
};

ObstructionCertificate certify_obstruction(const SurfaceMesh& mesh, const Graph& f,
                                           const CycleDecomposition& dec, const RotationSystem& rs,
                                           const EmbeddedGraph& g, double M, double A,
                                           const RadiusLadder& ladder, const CertifyOptions& opts = {});

struct RecheckResult {
    bool sound = false;
    std::string detail;
};

// Independently re-evaluates the certificate's claim against the live
// structures.
RecheckResult recheck_certificate(const ObstructionCertificate& cert, const SurfaceMesh& mesh,
                                  const Graph& f, const CycleDecomposition& dec,
                                  const RotationSystem& rs, const EmbeddedGraph& g);

}  // namespace qisurf
