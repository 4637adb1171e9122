#include "qisurf/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "qisurf/rotation.hpp"

namespace qisurf {

SurfaceTopology::SurfaceTopology(int vertex_count,
                                 std::vector<std::pair<int, int>> edge_list,
                                 std::vector<double> weights,
                                 std::vector<std::vector<int>> faces_as_edge_lists)
    : nv_(vertex_count),
      edges_(std::move(edge_list)),
      weights_(std::move(weights)),
      face_edges_(std::move(faces_as_edge_lists)) {
    if (weights_.size() != edges_.size()) throw Error("SurfaceTopology: weight count mismatch");
    incident_edges_.assign(nv_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [u, v] = edges_[e];
        incident_edges_[u].push_back(static_cast<int>(e));
        incident_edges_[v].push_back(static_cast<int>(e));
        if (weights_[e] <= 0) throw Error("SurfaceTopology: non-positive weight");
    }
    edge_faces_.assign(edges_.size(), {-1, -1});
    for (std::size_t f = 0; f < face_edges_.size(); ++f) {
        for (int e : face_edges_[f]) {
            auto& slots = edge_faces_[e];
            if (slots[0] == -1) slots[0] = static_cast<int>(f);
            else if (slots[1] == -1) slots[1] = static_cast<int>(f);
            else throw Error("SurfaceTopology: edge on more than two face slots");
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edge_faces_[e][1] == -1)
            throw Error("SurfaceTopology: edge with fewer than two face slots");
    build_signatures();
}

SurfaceTopology SurfaceTopology::from_rotation(const RotationSystem& rs,
                                               const std::vector<double>& weights) {
    FaceSet fs = trace_faces(rs);
    std::vector<std::vector<int>> face_edges;
    face_edges.reserve(fs.faces.size());
    for (const auto& fw : fs.faces) {
        std::vector<int> es;
        es.reserve(fw.size());
        for (int d : fw) es.push_back(d / 2);
        face_edges.push_back(std::move(es));
    }
    return SurfaceTopology(rs.graph.n, rs.graph.edges, weights, std::move(face_edges));
}

int SurfaceTopology::edge_between(int u, int v) const {
    for (int e : incident_edges_[u]) {
        auto [a, b] = edges_[e];
        if ((a == u && b == v) || (a == v && b == u)) return e;
    }
    return -1;
}

int SurfaceTopology::edge_other_end(int e, int v) const {
    auto [a, b] = edges_[e];
    return a == v ? b : a;
}

void SurfaceTopology::build_signatures() {
    const int ne = edge_count();
    // Primal spanning tree.
    std::vector<char> in_tree(ne, 0);
    {
        std::vector<char> seen(nv_, 0);
        std::deque<int> q{0};
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int e : incident_edges_[v]) {
                int w = edge_other_end(e, v);
                if (!seen[w]) {
                    seen[w] = 1;
                    in_tree[e] = 1;
                    q.push_back(w);
                }
            }
        }
        for (int v = 0; v < nv_; ++v)
            if (!seen[v]) throw Error("SurfaceTopology: graph not connected");
    }
    // Dual spanning tree over faces using non-tree edges only; records the
    // crossing edge used to reach each face.
    const int nf = face_count();
    std::vector<int> dual_parent_edge(nf, -1), dual_parent_face(nf, -1);
    std::vector<char> face_seen(nf, 0), in_cotree(ne, 0);
    {
        std::deque<int> q{0};
        face_seen[0] = 1;
        while (!q.empty()) {
            int f = q.front();
            q.pop_front();
            for (int e : face_edges_[f]) {
                if (in_tree[e] || in_cotree[e]) continue;
                auto [fa, fb] = edge_faces_[e];
                int g = (fa == f) ? fb : fa;
                if (g == f || face_seen[g]) continue;
                face_seen[g] = 1;
                in_cotree[e] = 1;
                dual_parent_edge[g] = e;
                dual_parent_face[g] = f;
                q.push_back(g);
            }
        }
        for (int f = 0; f < nf; ++f)
            if (!face_seen[f]) throw Error("SurfaceTopology: dual graph not connected");
    }
    std::vector<int> leftover;
    for (int e = 0; e < ne; ++e)
        if (!in_tree[e] && !in_cotree[e]) leftover.push_back(e);
    if (static_cast<int>(leftover.size()) != 2 * genus())
        throw Error("SurfaceTopology: tree-cotree leftover count != 2g");

    basis_words_ = (static_cast<int>(leftover.size()) + 63) / 64;
    edge_sig_.assign(ne, std::vector<std::uint64_t>(basis_words_, 0));
    auto set_bit = [&](int e, int i) { edge_sig_[e][i / 64] ^= (1ull << (i % 64)); };
    for (std::size_t i = 0; i < leftover.size(); ++i) {
        int x = leftover[i];
        set_bit(x, static_cast<int>(i));
        // Dual fundamental cycle: walk both faces of x up to their meet in
        // the dual tree, marking the crossed cotree edges.
        auto [fa, fb] = edge_faces_[x];
        auto face_depth = [&](int f) {
            int d = 0;
            while (dual_parent_face[f] != -1) {
                f = dual_parent_face[f];
                ++d;
            }
            return d;
        };
        int a = fa, b = fb;
        int da = face_depth(a), db = face_depth(b);
        while (da > db) {
            set_bit(dual_parent_edge[a], static_cast<int>(i));
            a = dual_parent_face[a];
            --da;
        }
        while (db > da) {
            set_bit(dual_parent_edge[b], static_cast<int>(i));
            b = dual_parent_face[b];
            --db;
        }
        while (a != b) {
            set_bit(dual_parent_edge[a], static_cast<int>(i));
            set_bit(dual_parent_edge[b], static_cast<int>(i));
            a = dual_parent_face[a];
            b = dual_parent_face[b];
        }
    }
}

bool SurfaceTopology::cycle_class_trivial(const std::vector<int>& cycle_edges) const {
    if (basis_words_ == 0) return true;
    std::vector<std::uint64_t> acc(basis_words_, 0);
    for (int e : cycle_edges)
        for (int w = 0; w < basis_words_; ++w) acc[w] ^= edge_sig_[e][w];
    for (auto w : acc)
        if (w) return false;
    return true;
}

bool SurfaceTopology::separating_cycle_bounds_disc(const std::vector<int>& cycle_edges) const {
    std::vector<char> on_cycle(edge_count(), 0);
    for (int e : cycle_edges) on_cycle[e] = 1;
    auto [f_left, f_right] = edge_faces_[cycle_edges.front()];
    if (f_left == f_right) throw Error("separating_cycle_bounds_disc: same face on both sides");

    std::vector<char> side(face_count(), 0);
    std::deque<int> q{f_left};
    side[f_left] = 1;
    int side_faces = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (int e : face_edges_[f]) {
            if (on_cycle[e]) continue;
            auto [fa, fb] = edge_faces_[e];
            int g = (fa == f) ? fb : fa;
            if (!side[g]) {
                side[g] = 1;
                ++side_faces;
                q.push_back(g);
            }
        }
    }
    if (side[f_right]) throw Error("separating_cycle_bounds_disc: sides merged on separating cycle");

    // chi of the left side with boundary; the right side follows from
    // chi_left + chi_right == chi(surface).
    std::set<int> vs, es;
    int fs = 0;
    for (int f = 0; f < face_count(); ++f) {
        if (!side[f]) continue;
        ++fs;
        for (int e : face_edges_[f]) {
            es.insert(e);
            vs.insert(edges_[e].first);
            vs.insert(edges_[e].second);
        }
    }
    int chi_left = static_cast<int>(vs.size()) - static_cast<int>(es.size()) + fs;
    int chi_right = euler_characteristic() - chi_left;
    return chi_left == 1 || chi_right == 1;
}

std::vector<int> SurfaceTopology::cycle_edges_of(const std::vector<int>& cycle_vertices) const {
    std::vector<int> es;
    const std::size_t k = cycle_vertices.size();
    es.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        int e = edge_between(cycle_vertices[i], cycle_vertices[(i + 1) % k]);
        if (e < 0) throw Error("cycle_edges_of: consecutive vertices not adjacent");
        es.push_back(e);
    }
    return es;
}

bool SurfaceTopology::noncontractible(const std::vector<int>& cycle_vertices) const {
    auto es = cycle_edges_of(cycle_vertices);
    if (!cycle_class_trivial(es)) return true;
    return !separating_cycle_bounds_disc(es);
}

namespace {

std::string canonical_cycle_key(std::vector<int> cyc) {
    auto mn = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), mn, cyc.end());
    if (cyc.size() > 2 && cyc[1] > cyc.back()) {
        std::reverse(cyc.begin() + 1, cyc.end());
    }
    std::string key;
    for (int v : cyc) {
        key += std::to_string(v);
        key += ',';
    }
    return key;
}

}  // namespace

std::optional<WeightedCycle> shortest_noncontractible_search(
    const SurfaceTopology& topo, const std::optional<WeightedCycle>& seed) {
    if (topo.genus() == 0) return std::nullopt;

    const double inf = std::numeric_limits<double>::infinity();
    WeightedCycle best;
    best.length = inf;
    if (seed) {
        if (!topo.noncontractible(seed->vertices))
            throw Error("shortest_noncontractible_search: seed cycle is contractible");
        best = *seed;
    }

    const int n = topo.vertex_count();
    std::unordered_set<std::string> tested;
    std::vector<double> dist(n);
    std::vector<int> parent_edge(n);
    std::vector<char> popped(n);

    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        std::fill(popped.begin(), popped.end(), 0);
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        dist[root] = 0;
        pq.push({0.0, root});
        std::vector<int> order;
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (popped[v]) continue;
            popped[v] = 1;
            if (d > best.length / 2) break;
            order.push_back(v);
            for (int e : topo.incident(v)) {
                int w = topo.edge_other_end(e, v);
                double nd = d + topo.weights()[e];
                if (nd < dist[w]) {
                    dist[w] = nd;
                    parent_edge[w] = e;
                    pq.push({nd, w});
                }
            }
        }
        // Candidate loops: closing edges between popped vertices.
        struct Cand {
            double len;
            int u, v, e;
        };
        std::vector<Cand> cands;
        for (int u : order) {
            for (int e : topo.incident(u)) {
                int v = topo.edge_other_end(e, u);
                if (u > v) continue;
                if (!popped[v] || !popped[u]) continue;
                if (parent_edge[u] == e || parent_edge[v] == e) continue;
                double len = dist[u] + dist[v] + topo.weights()[e];
                if (len < best.length) cands.push_back({len, u, v, e});
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.len != b.len) return a.len < b.len;
            return std::make_tuple(a.u, a.v, a.e) < std::make_tuple(b.u, b.v, b.e);
        });
        for (const auto& c : cands) {
            if (c.len >= best.length) break;
            // Root paths to u and v; strip the shared prefix to get a simple
            // cycle (the tree paths diverge exactly once).
            auto path_to = [&](int x) {
                std::vector<int> p{x};
                while (parent_edge[x] != -1) {
                    x = topo.edge_other_end(parent_edge[x], x);
                    p.push_back(x);
                }
                std::reverse(p.begin(), p.end());
                return p;  // root .. x
            };
            std::vector<int> pu = path_to(c.u), pv = path_to(c.v);
            std::size_t common = 0;
            while (common < pu.size() && common < pv.size() && pu[common] == pv[common]) ++common;
            std::vector<int> cyc(pu.begin() + (common - 1), pu.end());
            for (std::size_t i = pv.size(); i-- > common;) cyc.push_back(pv[i]);
            // cyc: meet .. u, v .. (meet excluded at end); closure via edge e
            // and tree path back. Recompute its true length.
            double clen = 0;
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int e2 = topo.edge_between(cyc[i], cyc[(i + 1) % cyc.size()]);
                if (e2 < 0) throw Error("systole search: candidate not a cycle");
                clen += topo.weights()[e2];
            }
            if (clen >= best.length) continue;
            auto key = canonical_cycle_key(cyc);
            if (!tested.insert(key).second) continue;
            if (topo.noncontractible(cyc)) {
                best.length = clen;
                best.vertices = cyc;
            }
        }
    }
    if (best.length == inf) return std::nullopt;
    return best;
}

}  // namespace qisurf
