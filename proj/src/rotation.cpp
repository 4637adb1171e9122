#include "qisurf/rotation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "qisurf/topology.hpp"

namespace qisurf {

int RotationSystem::rot_next(int d) const {
    const auto& r = rot[dart_tail(d)];
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] == d) return r[(i + 1) % r.size()];
    throw Error("rot_next: dart missing from its vertex rotation");
}

int RotationSystem::rot_prev(int d) const {
    const auto& r = rot[dart_tail(d)];
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] == d) return r[(i + r.size() - 1) % r.size()];
    throw Error("rot_prev: dart missing from its vertex rotation");
}

void RotationSystem::validate() const {
    graph.validate();
    if (static_cast<int>(rot.size()) != graph.n) throw Error("RotationSystem: rotation size mismatch");
    std::vector<char> seen(dart_count(), 0);
    for (int v = 0; v < graph.n; ++v) {
        if (static_cast<int>(rot[v].size()) != graph.degree(v))
            throw Error("RotationSystem: rotation degree mismatch at " + std::to_string(v));
        for (int d : rot[v]) {
            if (d < 0 || d >= dart_count()) throw Error("RotationSystem: dart id out of range");
            if (dart_tail(d) != v) throw Error("RotationSystem: dart listed at wrong vertex");
            if (seen[d]) throw Error("RotationSystem: dart listed twice");
            seen[d] = 1;
        }
    }
    for (int d = 0; d < dart_count(); ++d)
        if (!seen[d]) throw Error("RotationSystem: dart missing");
}

RotationSystem rotation_from_adjacency(const Graph& g) {
    RotationSystem rs;
    rs.graph = g;
    rs.graph.sort_adjacency();
    rs.rot.assign(g.n, {});
    for (int v = 0; v < g.n; ++v) {
        for (int w : rs.graph.adj[v]) {
            int e = rs.graph.edge_index(v, w);
            rs.rot[v].push_back(2 * e + (rs.graph.edges[e].first == v ? 0 : 1));
        }
    }
    return rs;
}

namespace {

// The two darts of cycle c that leave v (toward its cycle neighbors).
std::pair<int, int> cycle_darts_at(const RotationSystem& rs, const std::vector<int>& cycle, int v) {
    int k = static_cast<int>(cycle.size());
    int pos = -1;
    for (int i = 0; i < k; ++i)
        if (cycle[i] == v) pos = i;
    if (pos < 0) throw Error("cycle_darts_at: vertex not on cycle");
    int prev = cycle[(pos + k - 1) % k], next = cycle[(pos + 1) % k];
    auto dart_to = [&](int w) {
        int e = rs.graph.edge_index(v, w);
        if (e < 0) throw Error("cycle_darts_at: cycle edge missing");
        return 2 * e + (rs.graph.edges[e].first == v ? 0 : 1);
    };
    return {dart_to(prev), dart_to(next)};
}

}  // namespace

RotationSystem crossing_rotation_system(const Graph& f, const CycleDecomposition& dec) {
    if (!f.is_regular(4)) throw Error("crossing_rotation_system: graph must be 4-regular");
    RotationSystem rs;
    rs.graph = f;
    rs.graph.sort_adjacency();
    rs.rot.assign(f.n, {});
    for (int v = 0; v < f.n; ++v) {
        auto [c1, c2] = dec.vertex_cycles[v];
        if (c1 < 0 || c2 < 0 || c1 == c2)
            throw Error("crossing_rotation_system: vertex without two distinct cycles");
        auto [a1, a2] = cycle_darts_at(rs, dec.cycles[c1], v);
        auto [b1, b2] = cycle_darts_at(rs, dec.cycles[c2], v);
        if (a1 > a2) std::swap(a1, a2);
        if (b1 > b2) std::swap(b1, b2);
        // Lowest dart leads; the other cycle's lowest dart comes second.
        if (b1 < a1) {
            std::swap(a1, b1);
            std::swap(a2, b2);
        }
        rs.rot[v] = {a1, b1, a2, b2};
        std::set<int> uniq(rs.rot[v].begin(), rs.rot[v].end());
        if (uniq.size() != 4)
            throw Error("crossing_rotation_system: vertex without 2+2 distinct cycle darts");
    }
    rs.validate();
    return rs;
}

bool crossing_alternates_at(const RotationSystem& rs, const CycleDecomposition& dec, int v) {
    auto [c1, c2] = dec.vertex_cycles[v];
    auto [a1, a2] = cycle_darts_at(rs, dec.cycles[c1], v);
    const auto& r = rs.rot[v];
    if (r.size() != 4) return false;
    int p1 = -1, p2 = -1;
    for (int i = 0; i < 4; ++i) {
        if (r[i] == a1) p1 = i;
        if (r[i] == a2) p2 = i;
    }
    if (p1 < 0 || p2 < 0) return false;
    return (p2 - p1 + 4) % 4 == 2;
}

FaceSet trace_faces(const RotationSystem& rs) {
    FaceSet fs;
    fs.dart_face.assign(rs.dart_count(), -1);
    for (int d0 = 0; d0 < rs.dart_count(); ++d0) {
        if (fs.dart_face[d0] != -1) continue;
        std::vector<int> walk;
        int d = d0;
        do {
            fs.dart_face[d] = static_cast<int>(fs.faces.size());
            walk.push_back(d);
            d = rs.face_next(d);
        } while (d != d0);
        fs.faces.push_back(std::move(walk));
    }
    return fs;
}

SurfaceSummary surface_summary(const RotationSystem& rs) {
    if (!rs.graph.is_connected()) throw Error("surface_summary: graph not connected");
    FaceSet fs = trace_faces(rs);
    SurfaceSummary s;
    s.vertices = rs.graph.n;
    s.edge_count = rs.graph.edge_count();
    s.faces = fs.face_count();
    s.euler_characteristic = s.vertices - s.edge_count + s.faces;
    if ((2 - s.euler_characteristic) % 2 != 0)
        throw Error("surface_summary: odd Euler characteristic");
    s.genus = (2 - s.euler_characteristic) / 2;
    if (s.genus < 0) throw Error("surface_summary: negative genus");
    s.orientable = true;
    s.cell_embedding = true;
    return s;
}

std::vector<CutComponent> cut_along_cycle(const RotationSystem& rs, const std::vector<int>& cycle) {
    const int k = static_cast<int>(cycle.size());
    if (k < 3) throw Error("cut_along_cycle: cycle too short");
    {
        std::set<int> uniq(cycle.begin(), cycle.end());
        if (static_cast<int>(uniq.size()) != k) throw Error("cut_along_cycle: cycle repeats a vertex");
    }
    const Graph& g = rs.graph;
    std::vector<int> cycle_pos(g.n, -1);
    for (int i = 0; i < k; ++i) cycle_pos[cycle[i]] = i;

    // Outgoing cycle darts at each cycle vertex.
    std::vector<int> d_out(k), d_in(k);
    std::vector<char> is_cycle_edge(g.edge_count(), 0);
    for (int i = 0; i < k; ++i) {
        int v = cycle[i], w = cycle[(i + 1) % k];
        int e = g.edge_index(v, w);
        if (e < 0) throw Error("cut_along_cycle: consecutive cycle vertices not adjacent");
        is_cycle_edge[e] = 1;
        d_out[i] = 2 * e + (g.edges[e].first == v ? 0 : 1);
        d_in[(i + 1) % k] = RotationSystem::dart_pair(d_out[i]);
    }

    // New vertex ids: non-cycle vertices keep a remapped slot; each cycle
    // vertex splits into an out-side and an in-side copy.
    std::vector<int> base(g.n, -1);
    int nn = 0;
    for (int v = 0; v < g.n; ++v)
        if (cycle_pos[v] < 0) base[v] = nn++;
    std::vector<int> copy_out(k), copy_in(k);
    for (int i = 0; i < k; ++i) {
        copy_out[i] = nn++;
        copy_in[i] = nn++;
    }

    // Side of each dart at a cycle vertex: darts strictly between d_out and
    // d_in (in rotation order) go to the out-copy, the rest to the in-copy.
    std::vector<int> dart_new_tail(rs.dart_count(), -1);
    for (int v = 0; v < g.n; ++v) {
        if (cycle_pos[v] < 0) {
            for (int d : rs.rot[v]) dart_new_tail[d] = base[v];
            continue;
        }
        int i = cycle_pos[v];
        const auto& r = rs.rot[v];
        int po = -1, pi = -1;
        for (std::size_t t = 0; t < r.size(); ++t) {
            if (r[t] == d_out[i]) po = static_cast<int>(t);
            if (r[t] == d_in[i]) pi = static_cast<int>(t);
        }
        if (po < 0 || pi < 0) throw Error("cut_along_cycle: cycle darts missing from rotation");
        int deg = static_cast<int>(r.size());
        for (int t = (po + 1) % deg; t != pi; t = (t + 1) % deg) dart_new_tail[r[t]] = copy_out[i];
        for (int t = (pi + 1) % deg; t != po; t = (t + 1) % deg) dart_new_tail[r[t]] = copy_in[i];
    }

    // New edges. Non-cycle edges persist with remapped ends; cycle edges get
    // one copy per side.
    struct NE {
        int a, b;
        char bnd;  // 0 none, 1 out-side, 2 in-side
    };
    std::vector<NE> nedges;
    std::vector<int> edge_remap(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (is_cycle_edge[e]) continue;
        int ta = dart_new_tail[2 * e], tb = dart_new_tail[2 * e + 1];
        edge_remap[e] = static_cast<int>(nedges.size());
        nedges.push_back({ta, tb, 0});
    }
    std::vector<int> out_edge(k), in_edge(k);
    for (int i = 0; i < k; ++i) {
        out_edge[i] = static_cast<int>(nedges.size());
        nedges.push_back({copy_out[i], copy_out[(i + 1) % k], 1});
        in_edge[i] = static_cast<int>(nedges.size());
        nedges.push_back({copy_in[i], copy_in[(i + 1) % k], 2});
    }

    Graph ng(nn);
    for (const auto& e : nedges) ng.add_edge(e.a, e.b);
    auto new_dart = [&](int idx, int tail) {
        const auto& e = ng.edges[idx];
        return 2 * idx + (e.first == tail ? 0 : 1);
    };
    auto remap_dart = [&](int old_d) {
        int e = old_d / 2;
        return new_dart(edge_remap[e], dart_new_tail[old_d]);
    };

    std::vector<std::vector<int>> nrot(nn);
    for (int v = 0; v < g.n; ++v) {
        if (cycle_pos[v] < 0) {
            for (int d : rs.rot[v]) nrot[base[v]].push_back(remap_dart(d));
            continue;
        }
        int i = cycle_pos[v];
        const auto& r = rs.rot[v];
        int deg = static_cast<int>(r.size());
        int po = -1, pi = -1;
        for (std::size_t t = 0; t < r.size(); ++t) {
            if (r[t] == d_out[i]) po = static_cast<int>(t);
            if (r[t] == d_in[i]) pi = static_cast<int>(t);
        }
        // Out copy: (out-dart, arc, in-dart). In copy: (in-dart, arc, out-dart).
        auto& ro = nrot[copy_out[i]];
        ro.push_back(new_dart(out_edge[i], copy_out[i]));
        for (int t = (po + 1) % deg; t != pi; t = (t + 1) % deg) ro.push_back(remap_dart(r[t]));
        ro.push_back(new_dart(out_edge[(i + k - 1) % k], copy_out[i]));
        auto& ri = nrot[copy_in[i]];
        ri.push_back(new_dart(in_edge[(i + k - 1) % k], copy_in[i]));
        for (int t = (pi + 1) % deg; t != po; t = (t + 1) % deg) ri.push_back(remap_dart(r[t]));
        ri.push_back(new_dart(in_edge[i], copy_in[i]));
    }

    RotationSystem cut;
    cut.graph = std::move(ng);
    cut.rot = std::move(nrot);
    cut.validate();

    // Split into connected components and trace each.
    std::vector<int> comp(nn, -1);
    int nc = 0;
    for (int v = 0; v < nn; ++v) {
        if (comp[v] != -1) continue;
        std::deque<int> q{v};
        comp[v] = nc;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int w : cut.graph.adj[x])
                if (comp[w] == -1) {
                    comp[w] = nc;
                    q.push_back(w);
                }
        }
        ++nc;
    }

    std::vector<CutComponent> out(nc);
    std::vector<std::vector<int>> comp_verts(nc);
    for (int v = 0; v < nn; ++v) comp_verts[comp[v]].push_back(v);
    for (int c = 0; c < nc; ++c) {
        std::vector<int> vmap(nn, -1);
        for (std::size_t i = 0; i < comp_verts[c].size(); ++i) vmap[comp_verts[c][i]] = static_cast<int>(i);
        RotationSystem sub;
        sub.graph = Graph(static_cast<int>(comp_verts[c].size()));
        std::vector<int> submap(nedges.size(), -1);
        bool has_a = false, has_b = false;
        for (std::size_t e = 0; e < nedges.size(); ++e) {
            if (comp[nedges[e].a] != c) continue;
            submap[e] = sub.graph.edge_count();
            sub.graph.add_edge(vmap[nedges[e].a], vmap[nedges[e].b]);
            if (nedges[e].bnd == 1) has_a = true;
            if (nedges[e].bnd == 2) has_b = true;
        }
        sub.rot.assign(sub.graph.n, {});
        for (int v : comp_verts[c]) {
            for (int d : cut.rot[v]) {
                int e = d / 2;
                int tail = vmap[v];
                const auto& ne = sub.graph.edges[submap[e]];
                sub.rot[vmap[v]].push_back(2 * submap[e] + (ne.first == tail ? 0 : 1));
            }
        }
        sub.validate();
        FaceSet fs = trace_faces(sub);
        CutComponent cc;
        cc.boundary_circles = (has_a ? 1 : 0) + (has_b ? 1 : 0);
        cc.chi_closed = sub.graph.n - sub.graph.edge_count() + fs.face_count();
        cc.chi_with_boundary = cc.chi_closed - cc.boundary_circles;
        cc.is_disc = (cc.boundary_circles == 1 && cc.chi_with_boundary == 1);
        cc.rs = std::move(sub);
        out[c] = std::move(cc);
    }
    return out;
}

bool is_contractible(const RotationSystem& rs, const std::vector<int>& cycle) {
    auto parts = cut_along_cycle(rs, cycle);
    for (const auto& p : parts)
        if (p.is_disc) return true;
    return false;
}

SystoleResult shortest_noncontractible_cycle(const RotationSystem& rs,
                                             const std::vector<double>& edge_weights) {
    if (static_cast<int>(edge_weights.size()) != rs.graph.edge_count())
        throw Error("shortest_noncontractible_cycle: weight count mismatch");
    SurfaceTopology topo = SurfaceTopology::from_rotation(rs, edge_weights);
    auto found = shortest_noncontractible_search(topo, std::nullopt);
    SystoleResult r;
    if (!found) return r;
    r.exists = true;
    r.length = found->length;
    r.cycle = found->vertices;
    return r;
}

}  // namespace qisurf
