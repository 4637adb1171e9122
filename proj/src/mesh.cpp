#include "qisurf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

namespace qisurf {

namespace {
constexpr double kQuantum = 1.0 / (1 << 20);
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double snap_weight(double w) { return std::round(w / kQuantum) * kQuantum; }
double snap_weight_down(double w) { return std::floor(w / kQuantum) * kQuantum; }

double MeshParams::depth_requirement() const { return std::max(K, 12.0 * M * M * M); }

void MeshParams::validate() const {
    if (epsilon <= 0) throw Error("MeshParams: epsilon must be positive");
    if (step <= 0 || step > epsilon / 2) throw Error("MeshParams: step must lie in (0, epsilon/2]");
    if (strip_width < 2 || strip_width % 2 != 0)
        throw Error("MeshParams: strip_width must be even and >= 2");
    if (K < 0) throw Error("MeshParams: K must be >= 0");
    if (M <= 0) throw Error("MeshParams: M must be positive");
    if (!(face_depth > depth_requirement()))
        throw Error("MeshParams: face_depth must exceed max(K, 12*M^3)");
}

int SurfaceMesh::edge_between(int u, int v) const {
    const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    int other = adj[u].size() <= adj[v].size() ? v : u;
    for (auto [w, e] : a)
        if (w == other) return e;
    return -1;
}

void SurfaceMesh::add_mesh_edge(int u, int v, double w) {
    if (u == v) throw Error("add_mesh_edge: self-loop");
    int e = static_cast<int>(edges.size());
    edges.emplace_back(u, v);
    weights.push_back(w);
    adj[u].emplace_back(v, e);
    adj[v].emplace_back(u, e);
}

SurfaceTopology SurfaceMesh::topology() const {
    std::unordered_map<std::uint64_t, int> lookup;
    lookup.reserve(edges.size() * 2);
    auto key = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    for (std::size_t e = 0; e < edges.size(); ++e) lookup[key(edges[e].first, edges[e].second)] = static_cast<int>(e);
    std::vector<std::vector<int>> face_edges;
    face_edges.reserve(triangles.size());
    for (const auto& t : triangles) {
        face_edges.push_back({lookup.at(key(t[0], t[1])), lookup.at(key(t[1], t[2])),
                              lookup.at(key(t[2], t[0]))});
    }
    return SurfaceTopology(nv, edges, weights, std::move(face_edges));
}

namespace {

struct MeshBuilder {
    const RotationSystem& rs;
    const MeshParams& p;
    SurfaceMesh m;

    int n_cols = 0, half = 0, q_rings = 0;
    double h = 0, hd = 0;
    std::vector<int> dart_slot;  // position of each dart in its vertex rotation

    explicit MeshBuilder(const RotationSystem& rs_, const MeshParams& p_) : rs(rs_), p(p_) {}

    int corner_id(int v, int i, int r) const {
        return rs.graph.n + v * 4 * half + i * half + (r - 1);
    }
    int strip_base = 0, per_strip = 0;
    int strip_interior_id(int e, int j, int rr) const {
        return strip_base + e * per_strip + (j - 1) * (2 * half + 1) + (rr + half);
    }
    // Any grid slot of strip e, ports resolved to anchors and corner columns.
    int vert_at(int e, int j, int rr) const {
        auto [a, b] = rs.graph.edges[e];
        if (j == 0) {
            if (rr == 0) return a;
            int slot = dart_slot[2 * e];
            if (rr > 0) return corner_id(a, slot, rr);
            return corner_id(a, (slot + 3) % 4, -rr);
        }
        if (j == n_cols) {
            if (rr == 0) return b;
            int slot = dart_slot[2 * e + 1];
            if (rr < 0) return corner_id(b, slot, -rr);
            return corner_id(b, (slot + 3) % 4, rr);
        }
        return strip_interior_id(e, j, rr);
    }

    void build() {
        p.validate();
        const Graph& f = rs.graph;
        if (!f.is_regular(4)) throw Error("build_surface_mesh: graph must be 4-regular");
        SurfaceSummary sum = surface_summary(rs);

        n_cols = 2 * static_cast<int>(std::ceil(p.epsilon / (2.0 * p.step)));
        half = p.strip_width / 2;
        h = snap_weight_down(p.epsilon / n_cols);
        if (h <= 0) throw Error("build_surface_mesh: degenerate step");
        hd = snap_weight(h * std::sqrt(2.0));
        q_rings = static_cast<int>(std::ceil(p.face_depth / h));

        dart_slot.assign(rs.dart_count(), -1);
        for (int v = 0; v < f.n; ++v)
            for (std::size_t i = 0; i < rs.rot[v].size(); ++i) dart_slot[rs.rot[v][i]] = static_cast<int>(i);

        FaceSet fs = trace_faces(rs);

        strip_base = f.n + f.n * 4 * half;
        per_strip = (n_cols - 1) * (2 * half + 1);
        int next_id = strip_base + f.edge_count() * per_strip;

        // Ring0 around each face: per dart, its rail vertices in walk order.
        std::vector<std::vector<int>> ring0(fs.face_count());
        for (int fc = 0; fc < fs.face_count(); ++fc) {
            for (int d : fs.faces[fc]) {
                int e = d / 2;
                if (d % 2 == 0) {
                    for (int j = 0; j < n_cols; ++j) ring0[fc].push_back(vert_at(e, j, -half));
                } else {
                    for (int j = 0; j < n_cols; ++j) ring0[fc].push_back(vert_at(e, n_cols - j, half));
                }
            }
        }
        std::vector<int> ring_base(fs.face_count()), hub_id(fs.face_count());
        for (int fc = 0; fc < fs.face_count(); ++fc) {
            ring_base[fc] = next_id;
            next_id += q_rings * static_cast<int>(ring0[fc].size());
            hub_id[fc] = next_id++;
        }

        m.nv = next_id;
        m.adj.assign(m.nv, {});
        m.region_kind.assign(m.nv, RegionKind::VertexPatch);
        m.region_id.assign(m.nv, -1);
        m.within_d.assign(m.nv, 1);
        m.on_boundary_d.assign(m.nv, 0);
        m.on_rho.assign(m.nv, 0);
        m.owner.assign(m.nv, -1);
        m.anchor.resize(f.n);
        m.f_graph = f;
        m.params = p;
        m.embedding_faces = sum.faces;
        m.genus = sum.genus;

        auto ring_id = [&](int fc, int level, int pos) {  // level >= 1
            return ring_base[fc] + (level - 1) * static_cast<int>(ring0[fc].size()) + pos;
        };

        // Labels: anchors and corner columns.
        for (int v = 0; v < f.n; ++v) {
            m.anchor[v] = v;
            m.region_kind[v] = RegionKind::VertexPatch;
            m.region_id[v] = v;
            m.owner[v] = v;
            for (int i = 0; i < 4; ++i)
                for (int r = 1; r <= half; ++r) {
                    int id = corner_id(v, i, r);
                    m.region_kind[id] = RegionKind::VertexPatch;
                    m.region_id[id] = v;
                    m.owner[id] = v;
                }
        }
        // Strip interiors.
        const int j_mid = n_cols / 2;
        for (int e = 0; e < f.edge_count(); ++e) {
            auto [a, b] = f.edges[e];
            for (int j = 1; j < n_cols; ++j)
                for (int rr = -half; rr <= half; ++rr) {
                    int id = strip_interior_id(e, j, rr);
                    m.region_kind[id] = RegionKind::EdgeStrip;
                    m.region_id[id] = e;
                    m.owner[id] = j < j_mid ? a : (j > j_mid ? b : a);
                    if (j == j_mid) m.on_rho[id] = 1;
                }
        }

        // Patch spokes (port-column verticals, shared by adjacent strips).
        for (int v = 0; v < f.n; ++v)
            for (int i = 0; i < 4; ++i) {
                m.add_mesh_edge(v, corner_id(v, i, 1), h);
                for (int r = 1; r < half; ++r) m.add_mesh_edge(corner_id(v, i, r), corner_id(v, i, r + 1), h);
            }
        // Strip grids.
        for (int e = 0; e < f.edge_count(); ++e) {
            for (int rr = -half; rr <= half; ++rr)
                for (int j = 0; j < n_cols; ++j) m.add_mesh_edge(vert_at(e, j, rr), vert_at(e, j + 1, rr), h);
            for (int j = 1; j < n_cols; ++j)
                for (int rr = -half; rr < half; ++rr)
                    m.add_mesh_edge(vert_at(e, j, rr), vert_at(e, j, rr + 1), h);
            for (int j = 0; j < n_cols; ++j)
                for (int rr = -half; rr < half; ++rr) {
                    m.add_mesh_edge(vert_at(e, j, rr), vert_at(e, j + 1, rr + 1), hd);
                    m.triangles.push_back({vert_at(e, j, rr), vert_at(e, j + 1, rr), vert_at(e, j + 1, rr + 1)});
                    m.triangles.push_back({vert_at(e, j, rr), vert_at(e, j + 1, rr + 1), vert_at(e, j, rr + 1)});
                }
        }
        // Face wells: rings, bands, hub cone.
        for (int fc = 0; fc < fs.face_count(); ++fc) {
            const auto& r0 = ring0[fc];
            const int L = static_cast<int>(r0.size());
            for (int level = 1; level <= q_rings; ++level)
                for (int pos = 0; pos < L; ++pos) {
                    int id = ring_id(fc, level, pos);
                    m.region_kind[id] = RegionKind::FaceDisc;
                    m.region_id[id] = fc;
                    m.owner[id] = m.owner[r0[pos]];
                    if (level == q_rings) m.on_boundary_d[id] = 1;
                }
            auto at = [&](int level, int pos) { return level == 0 ? r0[pos % L] : ring_id(fc, level, pos % L); };
            for (int level = 1; level <= q_rings; ++level)
                for (int pos = 0; pos < L; ++pos) m.add_mesh_edge(at(level, pos), at(level, pos + 1), h);
            for (int level = 0; level < q_rings; ++level)
                for (int pos = 0; pos < L; ++pos) {
                    m.add_mesh_edge(at(level, pos), at(level + 1, pos), h);
                    m.add_mesh_edge(at(level, pos), at(level + 1, pos + 1), hd);
                    m.triangles.push_back({at(level, pos), at(level, pos + 1), at(level + 1, pos + 1)});
                    m.triangles.push_back({at(level, pos), at(level + 1, pos + 1), at(level + 1, pos)});
                }
            int hub = hub_id[fc];
            m.region_kind[hub] = RegionKind::FaceDisc;
            m.region_id[hub] = fc;
            m.owner[hub] = -1;
            m.within_d[hub] = 0;
            for (int pos = 0; pos < L; ++pos) {
                m.add_mesh_edge(at(q_rings, pos), hub, h);
                m.triangles.push_back({at(q_rings, pos), at(q_rings, pos + 1), hub});
            }
        }

        // Center paths, realized lengths, rho wells.
        m.edge_center_path.resize(f.edge_count());
        m.rho_columns.resize(f.edge_count());
        m.realized_edge_length.resize(f.edge_count());
        std::unordered_map<int, std::pair<int, int>> ring0_pos;  // rail vertex -> (face, pos)
        for (int fc = 0; fc < fs.face_count(); ++fc)
            for (int pos = 0; pos < static_cast<int>(ring0[fc].size()); ++pos)
                ring0_pos[ring0[fc][pos]] = {fc, pos};
        for (int e = 0; e < f.edge_count(); ++e) {
            for (int j = 0; j <= n_cols; ++j) m.edge_center_path[e].push_back(vert_at(e, j, 0));
            m.realized_edge_length[e] = n_cols * h;
            for (int rr = -half; rr <= half; ++rr) m.rho_columns[e].push_back(vert_at(e, j_mid, rr));
            for (int side : {-half, half}) {
                auto it = ring0_pos.find(vert_at(e, j_mid, side));
                if (it == ring0_pos.end()) throw Error("build_surface_mesh: rail vertex missing from ring0");
                auto [fc, pos] = it->second;
                for (int level = 1; level <= q_rings; ++level) m.rho_columns[e].push_back(ring_id(fc, level, pos));
            }
            for (int id : m.rho_columns[e]) m.on_rho[id] = 1;
        }

        check_consistency();
    }

    void check_consistency() {
        // No duplicate edges, positive weights.
        std::vector<std::uint64_t> keys;
        keys.reserve(m.edges.size());
        for (auto [u, v] : m.edges) {
            auto a = std::minmax(u, v);
            keys.push_back((static_cast<std::uint64_t>(a.first) << 32) | static_cast<std::uint32_t>(a.second));
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
            throw Error("build_surface_mesh: duplicate mesh edge");
        for (double w : m.weights)
            if (w <= 0) throw Error("build_surface_mesh: non-positive weight");
        // Closed-surface bookkeeping: every edge borders exactly two
        // triangles and the Euler characteristic matches the embedding.
        std::unordered_map<std::uint64_t, int> tri_count;
        auto key = [](int a, int b) {
            if (a > b) std::swap(a, b);
            return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        };
        for (const auto& t : m.triangles)
            for (int i = 0; i < 3; ++i) ++tri_count[key(t[i], t[(i + 1) % 3])];
        if (tri_count.size() != m.edges.size())
            throw Error("build_surface_mesh: triangle edges do not match mesh edges");
        for (const auto& [k, c] : tri_count)
            if (c != 2) throw Error("build_surface_mesh: edge not on exactly two triangles");
        int chi = m.nv - static_cast<int>(m.edges.size()) + static_cast<int>(m.triangles.size());
        if (chi != 2 - 2 * m.genus)
            throw Error("build_surface_mesh: Euler characteristic mismatch");
    }
};

}  // namespace

SurfaceMesh build_surface_mesh(const RotationSystem& rs, const MeshParams& params) {
    MeshBuilder b(rs, params);
    b.build();
    return std::move(b.m);
}

std::vector<double> mesh_dijkstra(const SurfaceMesh& mesh, int source, double cutoff) {
    std::vector<double> dist(mesh.nv, kInf);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[source] = 0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (cutoff >= 0 && d > cutoff) break;
        for (auto [w, e] : mesh.adj[v]) {
            double nd = d + mesh.weights[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
    return dist;
}

double mesh_distance(const SurfaceMesh& mesh, int p, int q) {
    if (p < 0 || q < 0 || p >= mesh.nv || q >= mesh.nv) throw Error("mesh_distance: vertex out of range");
    if (p == q) return 0.0;
    std::vector<double> dist(mesh.nv, kInf);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[p] = 0;
    pq.push({0.0, p});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (v == q) return d;
        for (auto [w, e] : mesh.adj[v]) {
            double nd = d + mesh.weights[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
    return kInf;
}

MultiSourceField mesh_multi_source(const SurfaceMesh& mesh, const std::vector<int>& sources) {
    MultiSourceField f;
    f.dist.assign(mesh.nv, kInf);
    f.nearest.assign(mesh.nv, -1);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        int s = sources[i];
        if (0.0 < f.dist[s]) {
            f.dist[s] = 0.0;
            f.nearest[s] = static_cast<int>(i);
            pq.push({0.0, s});
        }
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > f.dist[v]) continue;
        for (auto [w, e] : mesh.adj[v]) {
            double nd = d + mesh.weights[e];
            if (nd < f.dist[w]) {
                f.dist[w] = nd;
                f.nearest[w] = f.nearest[v];
                pq.push({nd, w});
            }
        }
    }
    return f;
}

std::vector<int> mesh_shortest_path(const SurfaceMesh& mesh, int from, int to) {
    std::vector<double> dist(mesh.nv, kInf);
    std::vector<int> prev(mesh.nv, -1);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[from] = 0;
    pq.push({0.0, from});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (v == to) break;
        for (auto [w, e] : mesh.adj[v]) {
            double nd = d + mesh.weights[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                prev[w] = v;
                pq.push({nd, w});
            }
        }
    }
    if (dist[to] == kInf) return {};
    std::vector<int> path;
    for (int v = to; v != -1; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

MetricReport verify_metric_axioms(const SurfaceMesh& mesh, const Graph& f,
                                  const MeshParams& params,
                                  const std::vector<double>& r_samples) {
    MetricReport rep;
    rep.min_edge_length = kInf;
    rep.max_edge_length = 0;

    double max_r = 0;
    for (double r : r_samples) max_r = std::max(max_r, r);

    // Per-anchor truncated Dijkstra serves both the edge-length check and
    // the ball-containment check.
    const double eps = params.epsilon;
    for (int v = 0; v < f.n; ++v) {
        double cutoff = std::max(max_r, eps);
        auto dist = mesh_dijkstra(mesh, mesh.anchor[v], cutoff);
        for (int w : f.adj[v]) {
            if (w < v) continue;
            double d = dist[mesh.anchor[w]];
            rep.min_edge_length = std::min(rep.min_edge_length, d);
            rep.max_edge_length = std::max(rep.max_edge_length, d);
            if (!(d >= eps / 2 && d <= eps)) {
                rep.edge_lengths_ok = false;
                rep.violations.push_back({"edge_length", v, mesh.anchor[w], d, eps});
            }
        }
        for (double r : r_samples) {
            int hops = static_cast<int>(std::floor(1.0 + r / eps));
            auto ball = neighborhood_ball(f, {v}, hops);
            std::vector<char> in_ball(f.n, 0);
            for (int x : ball) in_ball[x] = 1;
            for (int x = 0; x < mesh.nv; ++x) {
                if (!(dist[x] <= r) || !mesh.within_d[x]) continue;
                int own = mesh.owner[x];
                if (own < 0 || !in_ball[own]) {
                    rep.ball_containment_ok = false;
                    rep.violations.push_back({"ball_containment", v, x, dist[x], r});
                }
            }
        }
    }

    // Depth of the boundary of D below the embedded graph.
    std::vector<int> boundary;
    for (int x = 0; x < mesh.nv; ++x)
        if (mesh.on_boundary_d[x]) boundary.push_back(x);
    if (boundary.empty()) {
        rep.boundary_depth_ok = false;
        rep.violations.push_back({"boundary_depth", -1, -1, 0.0, params.depth_requirement()});
    } else {
        auto field = mesh_multi_source(mesh, boundary);
        rep.min_boundary_depth = kInf;
        int arg = -1;
        for (int v = 0; v < f.n; ++v) {
            if (field.dist[mesh.anchor[v]] < rep.min_boundary_depth) {
                rep.min_boundary_depth = field.dist[mesh.anchor[v]];
                arg = v;
            }
        }
        if (!(rep.min_boundary_depth > params.depth_requirement())) {
            rep.boundary_depth_ok = false;
            rep.violations.push_back({"boundary_depth", arg, mesh.anchor[arg], rep.min_boundary_depth,
                                      params.depth_requirement()});
        }
    }
    return rep;
}

MeshSystole mesh_systole(const SurfaceMesh& mesh, const RotationSystem& rs) {
    MeshSystole out;
    if (mesh.genus == 0) return out;

    // Seed with a refined noncontractible cycle of the embedded graph.
    SystoleResult fsys = shortest_noncontractible_cycle(rs, mesh.realized_edge_length);
    std::optional<WeightedCycle> seed;
    if (fsys.exists) {
        WeightedCycle wc;
        const auto& cyc = fsys.cycle;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
            int e = mesh.f_graph.edge_index(x, y);
            const auto& path = mesh.edge_center_path[e];
            if (mesh.f_graph.edges[e].first == x) {
                for (std::size_t k = 0; k + 1 < path.size(); ++k) wc.vertices.push_back(path[k]);
            } else {
                for (std::size_t k = path.size(); k-- > 1;) wc.vertices.push_back(path[k]);
            }
            wc.length += mesh.realized_edge_length[e];
        }
        seed = std::move(wc);
    }

    SurfaceTopology topo = mesh.topology();
    auto found = shortest_noncontractible_search(topo, seed);
    if (!found) return out;
    out.exists = true;
    out.length = found->length;
    out.cycle = found->vertices;
    return out;
}

}  // namespace qisurf
