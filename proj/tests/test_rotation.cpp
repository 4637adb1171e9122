#include "doctest.h"
#include "oracles.hpp"
#include "qisurf/rotation.hpp"
#include "qisurf/topology.hpp"

#include <set>

using namespace qisurf;

namespace {

RotationSystem planar_k4() {
    Graph g = oracles::complete_graph(4);
    RotationSystem rs;
    rs.graph = g;
    rs.rot.assign(4, {});
    auto dart_to = [&](int v, int w) {
        int e = g.edge_index(v, w);
        return 2 * e + (g.edges[e].first == v ? 0 : 1);
    };
    // 3 in the middle of triangle 0-1-2.
    rs.rot[0] = {dart_to(0, 1), dart_to(0, 3), dart_to(0, 2)};
    rs.rot[1] = {dart_to(1, 2), dart_to(1, 3), dart_to(1, 0)};
    rs.rot[2] = {dart_to(2, 0), dart_to(2, 3), dart_to(2, 1)};
    rs.rot[3] = {dart_to(3, 0), dart_to(3, 1), dart_to(3, 2)};
    rs.validate();
    return rs;
}

}  // namespace

TEST_CASE("face tracing on planar examples") {
    Graph tri = oracles::complete_graph(3);
    auto rs = rotation_from_adjacency(tri);
    auto fs = trace_faces(rs);
    CHECK(fs.face_count() == 2);
    // dart partition: every dart in exactly one face
    std::vector<int> seen(rs.dart_count(), 0);
    for (const auto& f : fs.faces)
        for (int d : f) seen[d]++;
    CHECK(std::count(seen.begin(), seen.end(), 1) == rs.dart_count());

    auto k4 = planar_k4();
    auto sum = surface_summary(k4);
    CHECK(sum.faces == 4);
    CHECK(sum.euler_characteristic == 2);
    CHECK(sum.genus == 0);
    CHECK(sum.orientable);
}

TEST_CASE("crossing rotation system alternates at every vertex") {
    Graph k5 = oracles::complete_graph(5);
    auto dec = cycle_decomposition(k5);
    auto rs = crossing_rotation_system(k5, dec);
    for (int v = 0; v < 5; ++v) CHECK(crossing_alternates_at(rs, dec, v));

    // Swapping the second cycle's darts is still a legal crossing.
    RotationSystem swapped = rs;
    std::swap(swapped.rot[0][1], swapped.rot[0][3]);
    CHECK(crossing_alternates_at(swapped, dec, 0));

    auto sum = surface_summary(rs);
    CHECK(sum.euler_characteristic == 5 - 10 + sum.faces);
    CHECK((2 - sum.euler_characteristic) % 2 == 0);
    CHECK(sum.genus <= 5);  // genus of the crossing surface is at most |V(F)|
}

TEST_CASE("crossing construction respects the vertex-count genus bound across seeds") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        GenParams p;
        p.girth_target = 5;
        p.size_hint = 30;
        p.rng_seed = seed;
        Graph f = generate_regular_high_girth(p);
        auto dec = cycle_decomposition(f);
        auto rs = crossing_rotation_system(f, dec);
        for (int v = 0; v < f.n; ++v) CHECK(crossing_alternates_at(rs, dec, v));
        auto sum = surface_summary(rs);
        CHECK(sum.euler_characteristic == sum.vertices - sum.edge_count + sum.faces);
        CHECK(sum.genus >= 0);
        CHECK(sum.genus <= f.n);
    }
}

TEST_CASE("cutting a face boundary yields a disc") {
    auto k4 = planar_k4();
    auto fs = trace_faces(k4);
    // Pick a triangular face and cut along its vertex cycle.
    std::vector<int> cyc;
    for (int d : fs.faces[0]) cyc.push_back(k4.dart_tail(d));
    REQUIRE(cyc.size() == 3);
    auto parts = cut_along_cycle(k4, cyc);
    int discs = 0, total_boundaries = 0;
    int chi_sum = 0;
    for (const auto& p : parts) {
        discs += p.is_disc ? 1 : 0;
        total_boundaries += p.boundary_circles;
        chi_sum += p.chi_closed;
    }
    CHECK(discs >= 1);
    CHECK(total_boundaries == 2);
    // Cutting a sphere along any simple cycle gives two capped spheres.
    CHECK(chi_sum == surface_summary(k4).euler_characteristic + 2);
    CHECK(is_contractible(k4, cyc));
}

TEST_CASE("torus meridians are noncontractible") {
    auto torus = oracles::torus_rotation(3, 3);
    auto sum = surface_summary(torus);
    CHECK(sum.genus == 1);
    std::vector<int> meridian{0, 3, 6};  // a vertical wrap in the 3x3 grid
    CHECK(!is_contractible(torus, meridian));
    auto parts = cut_along_cycle(torus, meridian);
    // A nonseparating cut leaves one component with both boundary circles.
    CHECK(parts.size() == 1);
    CHECK(parts[0].boundary_circles == 2);
    CHECK(parts[0].chi_closed == surface_summary(torus).euler_characteristic + 2);
    for (const auto& p : parts) CHECK(!p.is_disc);

    // A contractible square on a 4x4 torus: walk around one grid cell.
    auto torus4 = oracles::torus_rotation(4, 4);
    std::vector<int> cell{0, 1, 5, 4};
    CHECK(is_contractible(torus4, cell));
}

TEST_CASE("shortest noncontractible cycle matches enumeration on the 4x4 torus") {
    auto torus = oracles::torus_rotation(4, 4);
    std::vector<double> w(torus.graph.edge_count(), 1.0);
    auto got = shortest_noncontractible_cycle(torus, w);
    REQUIRE(got.exists);
    auto expect = oracles::brute_noncontractible(torus, w, 8);
    REQUIRE(expect.exists);
    CHECK(got.length == doctest::Approx(expect.length));
    CHECK(got.length == doctest::Approx(4.0));
    CHECK(!is_contractible(torus, got.cycle));
}

TEST_CASE("systole search on the crossing K5 surface agrees with enumeration") {
    Graph k5 = oracles::complete_graph(5);
    auto dec = cycle_decomposition(k5);
    auto rs = crossing_rotation_system(k5, dec);
    std::vector<double> w(rs.graph.edge_count(), 1.0);
    auto sum = surface_summary(rs);
    auto got = shortest_noncontractible_cycle(rs, w);
    if (sum.genus == 0) {
        CHECK(!got.exists);
    } else {
        REQUIRE(got.exists);
        auto expect = oracles::brute_noncontractible(rs, w, 6);
        REQUIRE(expect.exists);
        CHECK(got.length == doctest::Approx(expect.length));
        CHECK(got.length >= 3);  // every graph cycle has at least girth edges
    }
}

TEST_CASE("genus-0 systole query returns the sentinel") {
    auto k4 = planar_k4();
    std::vector<double> w(k4.graph.edge_count(), 1.0);
    auto got = shortest_noncontractible_cycle(k4, w);
    CHECK(!got.exists);
}

TEST_CASE("surface summary rejects disconnected graphs") {
    Graph disc(6);
    disc.add_edge(0, 1);
    disc.add_edge(1, 2);
    disc.add_edge(2, 0);
    disc.add_edge(3, 4);
    disc.add_edge(4, 5);
    disc.add_edge(5, 3);
    auto rs = rotation_from_adjacency(disc);
    CHECK_THROWS_AS(surface_summary(rs), Error);
}
