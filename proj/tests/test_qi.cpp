#include "doctest.h"
#include "oracles.hpp"
#include "qisurf/qi.hpp"

#include <random>

using namespace qisurf;

namespace {

// Plain weighted graph wrapped as a mesh; enough structure for the distance
// and net operations used here.
SurfaceMesh wrap_graph(int nv, const std::vector<std::pair<int, int>>& edges,
                       const std::vector<double>& weights) {
    SurfaceMesh m;
    m.nv = nv;
    m.adj.assign(nv, {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
        m.edges.push_back(edges[e]);
        m.weights.push_back(weights[e]);
        m.adj[edges[e].first].emplace_back(edges[e].second, static_cast<int>(e));
        m.adj[edges[e].second].emplace_back(edges[e].first, static_cast<int>(e));
    }
    m.params.epsilon = 1.0;
    m.params.step = 0.5;
    m.region_kind.assign(nv, RegionKind::EdgeStrip);
    m.region_id.assign(nv, 0);
    m.within_d.assign(nv, 1);
    m.on_boundary_d.assign(nv, 0);
    m.on_rho.assign(nv, 0);
    m.owner.assign(nv, 0);
    return m;
}

SurfaceMesh unit_path_mesh(int n) {
    std::vector<std::pair<int, int>> edges;
    std::vector<double> w;
    for (int i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1});
        w.push_back(1.0);
    }
    return wrap_graph(n, edges, w);
}

}  // namespace

TEST_CASE("identity skeleton is an isometry at M = 1") {
    auto mesh = unit_path_mesh(8);
    auto g = identity_skeleton(mesh);
    g.validate(mesh);
    SamplingPlan plan;  // exhaustive
    auto rep = estimate_qi_constants(mesh, g, 1.0, plan);
    CHECK(rep.A_lower == 0.0);
    CHECK(rep.A_upper_ineq == 0.0);
    CHECK(rep.A_density == 0.0);
    CHECK(rep.A_min == 0.0);
    auto chk = check_qi(mesh, g, 1.0, 0.0, plan);
    CHECK(chk.pass);
}

TEST_CASE("single-vertex skeleton measures the true eccentricity") {
    auto mesh = unit_path_mesh(11);
    auto g = single_vertex_skeleton(mesh, 3);
    SamplingPlan plan;
    auto rep = estimate_qi_constants(mesh, g, 1.0, plan);
    auto fw = oracles::floyd_warshall(mesh.nv, mesh.edges, mesh.weights);
    double ecc = 0;
    for (int v = 0; v < mesh.nv; ++v) ecc = std::max(ecc, fw[3][v]);
    CHECK(rep.A_density == doctest::Approx(ecc));
    CHECK(rep.A_density == doctest::Approx(7.0));
    auto chk = check_qi(mesh, g, 1.0, ecc - 0.5, plan);
    CHECK(!chk.pass);
    CHECK(chk.failed_clause == "density");
    // witness re-evaluates to the claimed violation
    CHECK(mesh_distance(mesh, chk.density_witness_vertex, 3) == doctest::Approx(chk.density_value));
}

TEST_CASE("greedy net on a path: spaced points, path skeleton") {
    auto mesh = unit_path_mesh(11);  // length 10
    auto g = build_net(mesh, 2.0, 42);
    g.validate(mesh);
    CHECK(g.size() >= 4);
    CHECK(g.size() <= 7);
    // pairwise separation
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            CHECK(mesh_distance(mesh, g.skel_vertices[i], g.skel_vertices[j]) >= 2.0);
    // maximality: every mesh vertex within separation of a net point
    auto field = mesh_multi_source(mesh, g.skel_vertices);
    for (int v = 0; v < mesh.nv; ++v) CHECK(field.dist[v] < 2.0);
    // skeleton is connected (a path graph has path-like nets)
    auto dist = skeleton_bfs(g, 0);
    for (int v = 0; v < g.size(); ++v) CHECK(dist[v] != kSkelInf);

    CHECK_THROWS_AS(build_net(mesh, 0.5, 1), Error);  // below 2*step
}

TEST_CASE("separation beyond the diameter yields a single-vertex skeleton") {
    auto mesh = unit_path_mesh(6);
    auto g = build_net(mesh, 100.0, 7);
    CHECK(g.size() == 1);
    CHECK(g.skel_edges.empty());
}

TEST_CASE("skeleton distances match unit-weight Floyd-Warshall") {
    Graph f = oracles::circulant(7, 1, 2);
    auto dec = cycle_decomposition(f);
    auto rs = crossing_rotation_system(f, dec);
    MeshParams p;
    p.epsilon = 1.0;
    p.step = 0.5;
    p.K = 0.5;
    p.M = 0.5;
    p.face_depth = 1.6;
    auto mesh = build_surface_mesh(rs, p);
    auto g = build_net(mesh, 1.0, 5);
    g.validate(mesh);
    REQUIRE(g.size() <= 220);
    std::vector<std::pair<int, int>> se = g.skel_edges;
    std::vector<double> sw(se.size(), 1.0);
    auto fw = oracles::floyd_warshall(g.size(), se, sw);
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 60; ++rep) {
        int a = static_cast<int>(rng() % g.size());
        int b = static_cast<int>(rng() % g.size());
        int got = skeleton_distance(g, a, b);
        if (fw[a][b] == std::numeric_limits<double>::infinity()) CHECK(got == kSkelInf);
        else CHECK(got == static_cast<int>(fw[a][b]));
    }
}

TEST_CASE("A_min is non-increasing in M and sampled plans never exceed exhaustive") {
    Graph f = oracles::complete_graph(5);
    auto dec = cycle_decomposition(f);
    auto rs = crossing_rotation_system(f, dec);
    MeshParams p;
    p.epsilon = 1.0;
    p.step = 0.5;
    p.K = 0.5;
    p.M = 0.5;
    p.face_depth = 1.6;
    auto mesh = build_surface_mesh(rs, p);
    auto g = build_net(mesh, 1.0, 11);
    SamplingPlan ex;  // exhaustive
    double prev = std::numeric_limits<double>::infinity();
    for (double M : {1.0, 1.5, 2.0, 3.0}) {
        auto rep = estimate_qi_constants(mesh, g, M, ex);
        CHECK(rep.A_min <= prev);
        prev = rep.A_min;
    }
    SamplingPlan sampled;
    sampled.kind = SamplingPlan::Kind::RandomSources;
    sampled.source_count = 4;
    sampled.rng_seed = 9;
    auto ex_rep = estimate_qi_constants(mesh, g, 2.0, ex);
    auto sm_rep = estimate_qi_constants(mesh, g, 2.0, sampled);
    CHECK(sm_rep.A_min <= ex_rep.A_min);
    SamplingPlan anchored;
    anchored.kind = SamplingPlan::Kind::AnchorBiased;
    anchored.source_count = 4;
    auto an_rep = estimate_qi_constants(mesh, g, 2.0, anchored);
    CHECK(an_rep.A_min <= ex_rep.A_min);
}

TEST_CASE("witnesses re-evaluate to their reported slacks") {
    Graph f = oracles::complete_graph(5);
    auto dec = cycle_decomposition(f);
    auto rs = crossing_rotation_system(f, dec);
    MeshParams p;
    p.epsilon = 1.0;
    p.step = 0.5;
    p.K = 0.5;
    p.M = 0.5;
    p.face_depth = 1.6;
    auto mesh = build_surface_mesh(rs, p);
    auto g = build_net(mesh, 1.5, 2);
    SamplingPlan ex;
    auto rep = estimate_qi_constants(mesh, g, 1.0, ex);
    if (rep.A_lower > 0) {
        const auto& w = rep.lower_witness;
        double dm = mesh_distance(mesh, g.skel_vertices[w.skel_u], g.skel_vertices[w.skel_v]);
        int ds = skeleton_distance(g, w.skel_u, w.skel_v);
        CHECK(dm == doctest::Approx(w.d_mesh));
        CHECK(ds == w.d_skel);
        CHECK(ds - 1.0 * dm == doctest::Approx(rep.A_lower));
    }
    if (rep.A_density > 0) {
        auto field = mesh_multi_source(mesh, g.skel_vertices);
        CHECK(field.dist[rep.density_witness_vertex] == doctest::Approx(rep.A_density));
    }
}
