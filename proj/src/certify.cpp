#include "qisurf/certify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace qisurf {

const char* ObstructionCertificate::kind_name(Kind k) {
    switch (k) {
        case Kind::ContradictionWitness: return "ContradictionWitness";
        case Kind::DensityViolation: return "DensityViolation";
        case Kind::LegViolation: return "LegViolation";
        case Kind::WalkTooLong: return "WalkTooLong";
        case Kind::OutOfTheoremRange: return "OutOfTheoremRange";
        case Kind::JordanFailure: return "JordanFailure";
        case Kind::DiscFailure: return "DiscFailure";
    }
    return "?";
}

HopLadder HopLadder::derive(const RadiusLadder& ladder, double epsilon) {
    HopLadder h;
    h.base = std::max(1, static_cast<int>(std::floor(ladder.R)));
    h.proj = 2 * h.base;
    int slack = std::max(1, static_cast<int>(std::ceil(1.0 / epsilon)));
    h.near = 2 * h.base + 1 + slack;
    h.tree = h.near + h.proj;
    h.span = 2 * h.near + 1;
    h.girth_gate = 2 * h.tree + 2;
    return h;
}

namespace {

// Concatenated center-line path around a decomposition cycle.
struct CyclePath {
    std::vector<int> verts;   // mesh vertices, wrap implied
    std::vector<int> pos_of;  // nearest cycle position per path vertex
    double h = 0;             // column spacing
    int n_cols = 0;
};

CyclePath cycle_mesh_path(const SurfaceMesh& mesh, const CycleDecomposition& dec, int cycle_index) {
    const auto& cyc = dec.cycles[cycle_index];
    CyclePath cp;
    cp.n_cols = static_cast<int>(mesh.edge_center_path.front().size()) - 1;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
        int e = mesh.f_graph.edge_index(x, y);
        if (e < 0) throw Error("cycle_mesh_path: cycle edge missing");
        const auto& path = mesh.edge_center_path[e];
        bool fwd = mesh.f_graph.edges[e].first == x;
        for (int k = 0; k + 1 < static_cast<int>(path.size()); ++k) {
            int idx = fwd ? k : static_cast<int>(path.size()) - 1 - k;
            cp.verts.push_back(path[idx]);
            cp.pos_of.push_back(k <= cp.n_cols / 2 ? static_cast<int>(i)
                                                   : static_cast<int>((i + 1) % cyc.size()));
        }
    }
    cp.h = mesh.realized_edge_length.front() / cp.n_cols;
    return cp;
}

std::vector<int> ball_minus_vertices(const Graph& f, int center, int radius,
                                     const std::vector<int>& removed) {
    std::vector<char> blocked(f.n, 0);
    for (int r : removed) blocked[r] = 1;
    std::vector<int> dist(f.n, -1);
    std::deque<int> q{center};
    dist[center] = 0;
    std::vector<int> out{center};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (dist[v] >= radius) continue;
        for (int w : f.adj[v]) {
            if (blocked[w] || dist[w] != -1) continue;
            dist[w] = dist[v] + 1;
            out.push_back(w);
            q.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> ball_minus_edges(const Graph& f, int center, int radius,
                                  const std::vector<std::pair<int, int>>& removed) {
    auto banned = [&](int a, int b) {
        auto p = std::minmax(a, b);
        for (auto e : removed)
            if (std::minmax(e.first, e.second) == p) return true;
        return false;
    };
    std::vector<int> dist(f.n, -1);
    std::deque<int> q{center};
    dist[center] = 0;
    std::vector<int> out{center};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (dist[v] >= radius) continue;
        for (int w : f.adj[v]) {
            if (banned(v, w) || dist[w] != -1) continue;
            dist[w] = dist[v] + 1;
            out.push_back(w);
            q.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool induced_ball_is_tree(const Graph& f, int center, int radius) {
    auto ball = neighborhood_ball(f, {center}, radius);
    std::vector<char> in(f.n, 0);
    for (int v : ball) in[v] = 1;
    long long edges = 0;
    for (int v : ball)
        for (int w : f.adj[v])
            if (in[w]) ++edges;
    edges /= 2;
    return edges == static_cast<long long>(ball.size()) - 1;
}

std::vector<int> skeleton_path(const EmbeddedGraph& g, int from, int to) {
    if (from == to) return {from};
    std::vector<int> prev(g.size(), -2);
    std::deque<int> q{from};
    prev[from] = -1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [w, e] : g.adj[v]) {
            if (prev[w] != -2) continue;
            prev[w] = v;
            if (w == to) {
                std::vector<int> path{to};
                for (int x = prev[to]; x != -1; x = prev[x]) path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push_back(w);
        }
    }
    return {};
}

// Single projection decision for one walk vertex; shared by project_walk and
// the witness recheck.
struct ProjectionDecision {
    int projected = -1;
    int candidates = 0;
    bool no_owner = false;
};

ProjectionDecision project_one(const SurfaceMesh& mesh, const Graph& f,
                               const std::vector<int>& cyc, int sample_pos, int u_mesh,
                               const HopLadder& hop,
                               std::map<int, std::vector<char>>* ball_cache) {
    ProjectionDecision d;
    if (!mesh.within_d[u_mesh] || mesh.owner[u_mesh] < 0) {
        d.no_owner = true;
        return d;
    }
    const int L = static_cast<int>(cyc.size());
    int owner = mesh.owner[u_mesh];
    std::set<int> positions;
    for (int off = -hop.near; off <= hop.near; ++off) positions.insert(((sample_pos + off) % L + L) % L);
    for (int pos : positions) {
        const std::vector<char>* in_ball = nullptr;
        std::vector<char> local;
        if (ball_cache) {
            auto it = ball_cache->find(pos);
            if (it == ball_cache->end()) {
                std::vector<int> removed{cyc[(pos + L - 1) % L], cyc[(pos + 1) % L]};
                auto ball = ball_minus_vertices(f, cyc[pos], hop.proj, removed);
                std::vector<char> in(f.n, 0);
                for (int x : ball) in[x] = 1;
                it = ball_cache->emplace(pos, std::move(in)).first;
            }
            in_ball = &it->second;
        } else {
            std::vector<int> removed{cyc[(pos + L - 1) % L], cyc[(pos + 1) % L]};
            auto ball = ball_minus_vertices(f, cyc[pos], hop.proj, removed);
            local.assign(f.n, 0);
            for (int x : ball) local[x] = 1;
            in_ball = &local;
        }
        if ((*in_ball)[owner]) {
            if (d.projected == -1) {
                d.projected = cyc[pos];
                d.candidates = 1;
            } else if (d.projected != cyc[pos]) {
                ++d.candidates;
                return d;  // caller handles non-uniqueness
            }
        }
    }
    return d;
}

}  // namespace

CycleSamples sample_cycle_points(const SurfaceMesh& mesh, const CycleDecomposition& dec,
                                 int cycle_index) {
    CyclePath cp = cycle_mesh_path(mesh, dec, cycle_index);
    CycleSamples s;
    s.cycle_index = cycle_index;
    const double eps = mesh.params.epsilon;
    const double L = cp.h * static_cast<double>(cp.verts.size());
    s.total_length = L;
    if (L < 2.0 + 1.0 / eps)
        throw Error("sample_cycle_points: cycle too short (length " + std::to_string(L) + ")");
    if (cp.h > 0.5)
        throw Error("sample_cycle_points: mesh columns coarser than the sampling scale");

    // Gap lengths in column units, each within [1/2, 1].
    const int lo = static_cast<int>(std::ceil(0.5 / cp.h - 1e-12));
    const int hi = static_cast<int>(std::floor(1.0 / cp.h + 1e-12));
    if (lo > hi) throw Error("sample_cycle_points: no feasible spacing grid");
    const long long r = static_cast<long long>(cp.verts.size());
    long long k = (r + hi - 1) / hi;
    if (k * lo > r) throw Error("sample_cycle_points: cycle length not representable by spacing grid");
    std::vector<long long> gaps(k, lo);
    long long surplus = r - k * static_cast<long long>(lo);
    for (std::size_t i = 0; i < gaps.size() && surplus > 0; ++i) {
        long long add = std::min<long long>(hi - lo, surplus);
        gaps[i] += add;
        surplus -= add;
    }
    long long at = 0;
    for (long long gp : gaps) {
        s.mesh_vertices.push_back(cp.verts[at]);
        s.cycle_pos.push_back(cp.pos_of[at]);
        s.arc.push_back(static_cast<double>(at) * cp.h);
        at += gp;
    }
    // l_i <= 2 |C_i| eps since every gap is at least 1/2.
    if (static_cast<double>(s.mesh_vertices.size()) >
        2.0 * static_cast<double>(dec.cycles[cycle_index].size()) * eps + 1e-9)
        throw Error("sample_cycle_points: sample count exceeds 2|C|eps");
    return s;
}

NearestSkeletonResult nearest_skeleton_vertex(const MultiSourceField& field, int p, double bound) {
    NearestSkeletonResult r;
    if (field.nearest[p] < 0) return r;
    r.skel = field.nearest[p];
    r.dist = field.dist[p];
    r.found = r.dist <= bound;
    return r;
}

FollowingWalk build_following_walk(const SurfaceMesh& mesh, const EmbeddedGraph& g,
                                   const CycleDecomposition& dec,
                                   const MultiSourceField& skel_field, const CycleSamples& samples,
                                   double M, double A) {
    FollowingWalk w;
    w.cycle_index = samples.cycle_index;
    w.samples = samples;
    const double anchor_bound = M + 2 * A;  // <= 3M under A <= M

    for (std::size_t j = 0; j < samples.mesh_vertices.size(); ++j) {
        auto nr = nearest_skeleton_vertex(skel_field, samples.mesh_vertices[j], anchor_bound);
        if (!nr.found) {
            ObstructionCertificate c;
            c.kind = ObstructionCertificate::Kind::DensityViolation;
            c.M = M;
            c.A = A;
            c.density_mesh_vertex = samples.mesh_vertices[j];
            c.density_distance = nr.skel >= 0 ? nr.dist : std::numeric_limits<double>::infinity();
            c.density_bound = anchor_bound;
            c.reason = "sample point further than M+2A from every skeleton vertex";
            throw CertificateSignal(std::move(c));
        }
        w.anchor_skel.push_back(nr.skel);
    }

    const std::size_t l = w.anchor_skel.size();
    for (std::size_t j = 0; j < l; ++j) {
        int from = w.anchor_skel[j], to = w.anchor_skel[(j + 1) % l];
        auto path = skeleton_path(g, from, to);
        double dm = mesh_distance(mesh, g.skel_vertices[from], g.skel_vertices[to]);
        double bound = M * dm + A;
        long long hops = path.empty() ? -1 : static_cast<long long>(path.size()) - 1;
        if (path.empty() || static_cast<double>(hops) > bound + 1e-12) {
            ObstructionCertificate c;
            c.kind = ObstructionCertificate::Kind::LegViolation;
            c.M = M;
            c.A = A;
            c.leg_cycle = samples.cycle_index;
            c.leg_index = static_cast<int>(j);
            c.leg_from = from;
            c.leg_to = to;
            c.leg_mesh_distance = dm;
            c.leg_skel_distance = hops;
            c.leg_bound = bound;
            c.reason = path.empty() ? "skeleton disconnect between consecutive anchors"
                                    : "skeleton path longer than M*d+A";
            throw CertificateSignal(std::move(c));
        }
        w.legs.push_back(std::move(path));
    }

    for (std::size_t j = 0; j < w.legs.size(); ++j) {
        const auto& leg = w.legs[j];
        if (leg.size() == 1) {
            w.walk.push_back(leg[0]);
            w.walk_leg.push_back(static_cast<int>(j));
        } else {
            for (std::size_t t = 0; t + 1 < leg.size(); ++t) {
                w.walk.push_back(leg[t]);
                w.walk_leg.push_back(static_cast<int>(j));
            }
        }
        w.total_hops += static_cast<long long>(leg.size()) - 1;
    }
    w.pigeonhole_bound = 0.5 * static_cast<double>(dec.cycles[samples.cycle_index].size());
    w.over_length = static_cast<double>(w.total_hops) >= w.pigeonhole_bound;
    return w;
}

ProjectionMap project_walk(const SurfaceMesh& mesh, const Graph& f, const CycleDecomposition& dec,
                           const EmbeddedGraph& g, const FollowingWalk& walk, const HopLadder& hop) {
    ProjectionMap pm;
    pm.cycle_index = walk.cycle_index;
    pm.image.assign(f.n, 0);
    const auto& cyc = dec.cycles[walk.cycle_index];

    std::map<int, std::vector<char>> ball_cache;
    std::map<int, bool> tree_cache;
    auto tree_at = [&](int pos) {
        auto it = tree_cache.find(pos);
        if (it != tree_cache.end()) return it->second;
        bool ok = induced_ball_is_tree(f, cyc[pos], hop.tree);
        tree_cache.emplace(pos, ok);
        return ok;
    };

    for (std::size_t p = 0; p < walk.walk.size(); ++p) {
        ProjectionEntry ent;
        ent.walk_pos = static_cast<int>(p);
        ent.sample_idx = walk.walk_leg[p];
        int sample_pos = walk.samples.cycle_pos[ent.sample_idx];
        int u_mesh = g.skel_vertices[walk.walk[p]];
        auto d = project_one(mesh, f, cyc, sample_pos, u_mesh, hop, &ball_cache);
        ent.no_owner = d.no_owner;
        ent.candidate_count = d.candidates;
        ent.projected = d.candidates == 1 ? d.projected : -1;
        ent.tree_certified = tree_at(sample_pos);
        if (d.candidates > 1)
            throw NonUniqueProjection("project_walk: two candidates pass containment at walk pos " +
                                      std::to_string(p));
        if (ent.projected >= 0) pm.image[ent.projected] = 1;
        if (ent.projected < 0) pm.all_defined = false;
        if (!ent.tree_certified) pm.all_tree_certified = false;
        pm.entries.push_back(ent);
    }
    return pm;
}

std::optional<int> find_avoided_vertex(const Graph& f, const CycleDecomposition& dec,
                                       const std::vector<ProjectionMap>& projections) {
    std::vector<const ProjectionMap*> by_cycle(dec.cycles.size(), nullptr);
    for (const auto& pm : projections) by_cycle[pm.cycle_index] = &pm;
    for (int v = 0; v < f.n; ++v) {
        auto [c1, c2] = dec.vertex_cycles[v];
        if (!by_cycle[c1] || !by_cycle[c2]) continue;
        if (!by_cycle[c1]->image[v] && !by_cycle[c2]->image[v]) return v;
    }
    return std::nullopt;
}

namespace {

// Mesh support of the sub-walk between two sample indices (legs s..t-1),
// tagging every support vertex with the walk position it came from.
struct WalkSupport {
    std::vector<int> verts;      // concatenated route vertices
    std::vector<int> walk_pos;   // associated walk position per vertex
};

WalkSupport subwalk_support(const EmbeddedGraph& g, const FollowingWalk& walk, int leg_from,
                            int leg_to /* exclusive, cyclic */) {
    WalkSupport s;
    const int nlegs = static_cast<int>(walk.legs.size());
    // walk positions grouped per leg
    std::vector<std::vector<int>> leg_positions(nlegs);
    for (std::size_t p = 0; p < walk.walk.size(); ++p)
        leg_positions[walk.walk_leg[p]].push_back(static_cast<int>(p));
    for (int j = leg_from; j != leg_to; j = (j + 1) % nlegs) {
        const auto& leg = walk.legs[j];
        for (std::size_t t = 0; t + 1 < leg.size(); ++t) {
            int a = leg[t], b = leg[t + 1];
            int eidx = -1;
            for (auto [w, e] : g.adj[a])
                if (w == b) {
                    eidx = e;
                    break;
                }
            if (eidx < 0) throw Error("subwalk_support: leg edge missing from skeleton");
            auto route = g.routes[eidx];
            if (g.skel_edges[eidx].first != a) std::reverse(route.begin(), route.end());
            int pos = leg_positions[j].empty() ? -1
                      : leg_positions[j][std::min(t, leg_positions[j].size() - 1)];
            for (std::size_t k = 0; k + 1 < route.size() || (route.size() == 1 && k == 0); ++k) {
                s.verts.push_back(route[k]);
                s.walk_pos.push_back(pos);
                if (route.size() == 1) break;
            }
        }
    }
    return s;
}

struct DiscCheck {
    bool is_disc = false;
    int chi = 0;
    bool connected = false;
};

// Euler-characteristic disc test on an induced mesh region.
DiscCheck region_is_disc(const SurfaceMesh& mesh, const std::vector<char>& in_region) {
    DiscCheck dc;
    std::vector<int> verts;
    for (int v = 0; v < mesh.nv; ++v)
        if (in_region[v]) verts.push_back(v);
    if (verts.empty()) return dc;
    long long E = 0;
    for (std::size_t e = 0; e < mesh.edges.size(); ++e)
        if (in_region[mesh.edges[e].first] && in_region[mesh.edges[e].second]) ++E;
    long long T = 0;
    for (const auto& t : mesh.triangles)
        if (in_region[t[0]] && in_region[t[1]] && in_region[t[2]]) ++T;
    dc.chi = static_cast<int>(static_cast<long long>(verts.size()) - E + T);
    // connectivity over induced edges
    std::unordered_map<int, std::vector<int>> adj;
    for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
        auto [a, b] = mesh.edges[e];
        if (in_region[a] && in_region[b]) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    std::unordered_set<int> seen{verts[0]};
    std::deque<int> q{verts[0]};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (seen.insert(w).second) q.push_back(w);
    }
    dc.connected = seen.size() == verts.size();
    dc.is_disc = dc.connected && dc.chi == 1;
    return dc;
}

}  // namespace

ObstructionCertificate crossing_witness(const SurfaceMesh& mesh, const RotationSystem& rs,
                                        const CycleDecomposition& dec, const EmbeddedGraph& g,
                                        int avoided_v, const std::vector<FollowingWalk>& walks,
                                        const HopLadder& hop) {
    (void)rs;
    const Graph& f = mesh.f_graph;
    auto [ci1, ci2] = dec.vertex_cycles[avoided_v];
    std::vector<const FollowingWalk*> by_cycle(dec.cycles.size(), nullptr);
    for (const auto& w : walks) by_cycle[w.cycle_index] = &w;
    if (!by_cycle[ci1] || !by_cycle[ci2])
        throw Error("crossing_witness: walks missing for the avoided vertex's cycles");

    auto fail = [&](ObstructionCertificate::Kind kind, const std::string& why) {
        ObstructionCertificate c;
        c.kind = kind;
        c.reason = why;
        c.witness_v = avoided_v;
        throw CertificateSignal(std::move(c));
    };

    // Cut edges e_i, f_i at hop.base along each cycle, and the disc region
    // D* around the avoided vertex.
    std::vector<std::pair<int, int>> cut_edges;
    struct Side {
        int cycle;
        int pv;
        int s_sample = -1, t_sample = -1;
    };
    std::vector<Side> sides;
    for (int ci : {ci1, ci2}) {
        const auto& cyc = dec.cycles[ci];
        const int L = static_cast<int>(cyc.size());
        int pv = -1;
        for (int i = 0; i < L; ++i)
            if (cyc[i] == avoided_v) pv = i;
        cut_edges.push_back({cyc[((pv - hop.base) % L + L) % L], cyc[((pv - hop.base - 1) % L + L) % L]});
        cut_edges.push_back({cyc[(pv + hop.base) % L], cyc[(pv + hop.base + 1) % L]});
        sides.push_back({ci, pv});
    }

    auto ball = ball_minus_edges(f, avoided_v, hop.proj, cut_edges);
    std::vector<char> in_region(mesh.nv, 0);
    {
        std::vector<char> in_ball(f.n, 0);
        for (int x : ball) in_ball[x] = 1;
        for (int v = 0; v < mesh.nv; ++v)
            if (mesh.within_d[v] && mesh.owner[v] >= 0 && in_ball[mesh.owner[v]]) in_region[v] = 1;
        for (auto ce : cut_edges) {
            int e = f.edge_index(ce.first, ce.second);
            if (e < 0) throw Error("crossing_witness: cut edge missing");
            for (int v : mesh.rho_columns[e]) in_region[v] = 1;
        }
    }
    auto dc = region_is_disc(mesh, in_region);
    if (!dc.is_disc)
        fail(ObstructionCertificate::Kind::DiscFailure,
             "D* region is not a disc (chi=" + std::to_string(dc.chi) + ")");

    // Extract gamma_i: the maximal run of the sub-walk support inside D*
    // containing the support point nearest the avoided vertex.
    auto dist_v = mesh_dijkstra(mesh, mesh.anchor[avoided_v],
                                (hop.near + 2) * mesh.params.epsilon + mesh.params.face_depth + 2);
    std::vector<std::vector<int>> gammas;
    std::vector<std::vector<int>> gamma_positions;
    for (auto& side : sides) {
        const auto& walk = *by_cycle[side.cycle];
        const auto& cyc = dec.cycles[side.cycle];
        const int L = static_cast<int>(cyc.size());
        // samples at cycle distance in [proj+1, near] on each side of pv
        for (std::size_t j = 0; j < walk.samples.cycle_pos.size(); ++j) {
            int pos = walk.samples.cycle_pos[j];
            int fwd = ((pos - side.pv) % L + L) % L;   // steps forward from pv
            int bwd = ((side.pv - pos) % L + L) % L;   // steps backward from pv
            if (bwd >= hop.proj + 1 && bwd <= hop.near && side.s_sample < 0)
                side.s_sample = static_cast<int>(j);
            if (fwd >= hop.proj + 1 && fwd <= hop.near) side.t_sample = static_cast<int>(j);
        }
        if (side.s_sample < 0 || side.t_sample < 0)
            fail(ObstructionCertificate::Kind::JordanFailure,
                 "no sample in the crossing window around the avoided vertex");
        auto support = subwalk_support(g, walk, side.s_sample, side.t_sample);
        // maximal run inside D* containing the nearest support point
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < support.verts.size(); ++i) {
            if (!in_region[support.verts[i]]) continue;
            if (dist_v[support.verts[i]] < best_d) {
                best_d = dist_v[support.verts[i]];
                best = static_cast<int>(i);
            }
        }
        if (best < 0)
            fail(ObstructionCertificate::Kind::JordanFailure,
                 "sub-walk support does not enter D*");
        int lo = best, hi = best;
        while (lo > 0 && in_region[support.verts[lo - 1]]) --lo;
        while (hi + 1 < static_cast<int>(support.verts.size()) && in_region[support.verts[hi + 1]]) ++hi;
        std::vector<int> gamma(support.verts.begin() + lo, support.verts.begin() + hi + 1);
        std::vector<int> gpos(support.walk_pos.begin() + lo, support.walk_pos.begin() + hi + 1);
        gammas.push_back(std::move(gamma));
        gamma_positions.push_back(std::move(gpos));
    }

    // Shared mesh vertex of the two curves.
    std::unordered_map<int, int> first_pos;  // mesh vertex -> index in gamma1
    for (std::size_t i = 0; i < gammas[0].size(); ++i)
        if (!first_pos.count(gammas[0][i])) first_pos[gammas[0][i]] = static_cast<int>(i);
    int z = -1, g1_at = -1, g2_at = -1;
    for (std::size_t i = 0; i < gammas[1].size(); ++i) {
        auto it = first_pos.find(gammas[1][i]);
        if (it != first_pos.end() && (z == -1 || gammas[1][i] < z)) {
            z = gammas[1][i];
            g1_at = it->second;
            g2_at = static_cast<int>(i);
        }
    }
    if (z < 0)
        fail(ObstructionCertificate::Kind::JordanFailure,
             "gamma curves share no mesh vertex inside D*");

    // The walk vertex coinciding with z must project to the avoided vertex.
    struct Cand {
        int cycle_slot;
        int walk_pos;
    };
    std::vector<Cand> cands{{0, gamma_positions[0][g1_at]}, {1, gamma_positions[1][g2_at]}};
    for (const auto& c : cands) {
        if (c.walk_pos < 0) continue;
        const auto& side = sides[c.cycle_slot];
        const auto& walk = *by_cycle[side.cycle];
        const auto& cyc = dec.cycles[side.cycle];
        int u_skel = walk.walk[c.walk_pos];
        int u_mesh = g.skel_vertices[u_skel];
        int sample_pos = walk.samples.cycle_pos[walk.walk_leg[c.walk_pos]];
        if (cycle_distance(cyc, sample_pos, side.pv) > hop.near) continue;
        auto d = project_one(mesh, f, cyc, sample_pos, u_mesh, hop, nullptr);
        if (d.candidates == 1 && d.projected == avoided_v) {
            ObstructionCertificate cert;
            cert.kind = ObstructionCertificate::Kind::ContradictionWitness;
            cert.witness_cycle = side.cycle;
            cert.witness_walk_pos = c.walk_pos;
            cert.witness_u_skel = u_skel;
            cert.witness_v = avoided_v;
            cert.witness_z_mesh = z;
            cert.tree_certified = induced_ball_is_tree(f, cyc[sample_pos], hop.tree);
            cert.gamma1 = gammas[0];
            cert.gamma2 = gammas[1];
            cert.reason = "crossing point projects to the avoided vertex";
            return cert;
        }
    }
    fail(ObstructionCertificate::Kind::JordanFailure,
         "no walk vertex at the crossing projects to the avoided vertex");
    return {};  // unreachable
}

ObstructionCertificate certify_obstruction(const SurfaceMesh& mesh, const Graph& f,
                                           const CycleDecomposition& dec, const RotationSystem& rs,
                                           const EmbeddedGraph& g, double M, double A,
                                           const RadiusLadder& ladder, const CertifyOptions& opts) {
    auto out_of_range = [&](const std::string& why) {
        ObstructionCertificate c;
        c.kind = ObstructionCertificate::Kind::OutOfTheoremRange;
        c.reason = why;
        c.M = M;
        c.A = A;
        c.ladder_R = ladder.R;
        c.epsilon = mesh.params.epsilon;
        return c;
    };
    if (M < 1) throw Error("certify_obstruction: M must be >= 1");
    if (A < 0) throw Error("certify_obstruction: A must be >= 0");
    if (A > M) return out_of_range("claim outside the A <= M regime the argument assumes");
    const int gf = girth(f);
    if (static_cast<double>(gf) < ladder.g_min())
        return out_of_range("girth " + std::to_string(gf) + " below ladder requirement 8.5R = " +
                            std::to_string(ladder.g_min()));
    if (opts.paper_strict && mesh.params.epsilon > 1.0 / (33.0 * M * M) + 1e-15)
        return out_of_range("epsilon exceeds 1/(33 M^2) in strict mode");
    const HopLadder hop = HopLadder::derive(ladder, mesh.params.epsilon);

    auto finish = [&](ObstructionCertificate c) {
        c.M = M;
        c.A = A;
        c.ladder_R = ladder.R;
        c.epsilon = mesh.params.epsilon;
        return c;
    };

    // Coarse density first: every mesh point within M+2A of a skeleton vertex.
    MultiSourceField field = mesh_multi_source(mesh, g.skel_vertices);
    const double density_bound = M + 2 * A;
    for (int v = 0; v < mesh.nv; ++v) {
        if (field.dist[v] > density_bound) {
            ObstructionCertificate c;
            c.kind = ObstructionCertificate::Kind::DensityViolation;
            c.density_mesh_vertex = v;
            c.density_distance = field.dist[v];
            c.density_bound = density_bound;
            c.reason = "mesh point further than M+2A from every skeleton vertex";
            return finish(std::move(c));
        }
    }

    try {
        std::vector<FollowingWalk> walks;
        for (std::size_t i = 0; i < dec.cycles.size(); ++i) {
            auto samples = sample_cycle_points(mesh, dec, static_cast<int>(i));
            walks.push_back(build_following_walk(mesh, g, dec, field, samples, M, A));
        }
        std::vector<ProjectionMap> projections;
        for (const auto& w : walks) {
            try {
                projections.push_back(project_walk(mesh, f, dec, g, w, hop));
            } catch (const NonUniqueProjection& e) {
                return finish(out_of_range(std::string("projection not unique: ") + e.what()));
            }
        }
        for (const auto& pm : projections)
            if (!pm.all_defined)
                return finish(out_of_range("projection undefined for some walk vertex (cycle " +
                                           std::to_string(pm.cycle_index) + ")"));
        auto avoided = find_avoided_vertex(f, dec, projections);
        if (!avoided) {
            const FollowingWalk* worst = nullptr;
            for (const auto& w : walks)
                if (w.over_length && (!worst || w.total_hops - w.pigeonhole_bound >
                                                    worst->total_hops - worst->pigeonhole_bound))
                    worst = &w;
            if (!worst)
                throw Error("certify_obstruction: pigeonhole failed with all walks under bound");
            ObstructionCertificate c;
            c.kind = ObstructionCertificate::Kind::WalkTooLong;
            c.walk_cycle = worst->cycle_index;
            c.walk_length = worst->total_hops;
            c.walk_bound = worst->pigeonhole_bound;
            c.reason = "no avoided vertex; following walk at least half the cycle length";
            return finish(std::move(c));
        }
        return finish(crossing_witness(mesh, rs, dec, g, *avoided, walks, hop));
    } catch (const CertificateSignal& sig) {
        return finish(sig.cert);
    }
}

RecheckResult recheck_certificate(const ObstructionCertificate& cert, const SurfaceMesh& mesh,
                                  const Graph& f, const CycleDecomposition& dec,
                                  const RotationSystem& rs, const EmbeddedGraph& g) {
    (void)rs;
    RecheckResult r;
    using Kind = ObstructionCertificate::Kind;
    switch (cert.kind) {
        case Kind::DensityViolation: {
            MultiSourceField field = mesh_multi_source(mesh, g.skel_vertices);
            double d = field.dist[cert.density_mesh_vertex];
            r.sound = d > cert.density_bound;
            r.detail = "nearest skeleton distance " + std::to_string(d) + " vs bound " +
                       std::to_string(cert.density_bound);
            return r;
        }
        case Kind::LegViolation: {
            double dm = mesh_distance(mesh, g.skel_vertices[cert.leg_from], g.skel_vertices[cert.leg_to]);
            int ds = skeleton_distance(g, cert.leg_from, cert.leg_to);
            double bound = cert.M * dm + cert.A;
            bool viol = (ds == kSkelInf) || (static_cast<double>(ds) > bound + 1e-12);
            r.sound = viol;
            r.detail = "skeleton hops " + (ds == kSkelInf ? std::string("inf") : std::to_string(ds)) +
                       " vs bound " + std::to_string(bound);
            return r;
        }
        case Kind::WalkTooLong: {
            MultiSourceField field = mesh_multi_source(mesh, g.skel_vertices);
            auto samples = sample_cycle_points(mesh, dec, cert.walk_cycle);
            auto walk = build_following_walk(mesh, g, dec, field, samples, cert.M, cert.A);
            r.sound = walk.total_hops == cert.walk_length &&
                      static_cast<double>(walk.total_hops) >= cert.walk_bound;
            r.detail = "recomputed walk length " + std::to_string(walk.total_hops) + " vs bound " +
                       std::to_string(cert.walk_bound);
            return r;
        }
        case Kind::ContradictionWitness: {
            const HopLadder hop = HopLadder::derive(RadiusLadder{cert.ladder_R}, cert.epsilon);
            MultiSourceField field = mesh_multi_source(mesh, g.skel_vertices);
            auto [c1, c2] = dec.vertex_cycles[cert.witness_v];
            // v must be avoided by both cycles' projections...
            for (int ci : {c1, c2}) {
                auto samples = sample_cycle_points(mesh, dec, ci);
                auto walk = build_following_walk(mesh, g, dec, field, samples, cert.M, cert.A);
                auto pm = project_walk(mesh, f, dec, g, walk, hop);
                if (pm.image[cert.witness_v]) {
                    r.detail = "avoided vertex appears in the projection image";
                    return r;
                }
            }
            // ...while the witness walk vertex projects exactly to v.
            auto samples = sample_cycle_points(mesh, dec, cert.witness_cycle);
            auto walk = build_following_walk(mesh, g, dec, field, samples, cert.M, cert.A);
            if (cert.witness_walk_pos < 0 ||
                cert.witness_walk_pos >= static_cast<int>(walk.walk.size()) ||
                walk.walk[cert.witness_walk_pos] != cert.witness_u_skel) {
                r.detail = "witness walk position does not reproduce";
                return r;
            }
            int sample_pos = walk.samples.cycle_pos[walk.walk_leg[cert.witness_walk_pos]];
            const auto& cyc = dec.cycles[cert.witness_cycle];
            if (cycle_distance(cyc, sample_pos, /*pos of v*/ [&] {
                    for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
                        if (cyc[i] == cert.witness_v) return i;
                    return -1;
                }()) > hop.near) {
                r.detail = "witness sample too far from v along the cycle";
                return r;
            }
            auto d = project_one(mesh, f, cyc, sample_pos, g.skel_vertices[cert.witness_u_skel], hop,
                                 nullptr);
            r.sound = d.candidates == 1 && d.projected == cert.witness_v;
            r.detail = r.sound ? "projection recheck yields p(u) = v while v was avoided"
                               : "projection recheck does not yield v";
            return r;
        }
        case Kind::OutOfTheoremRange: {
            // The range conditions are recomputable from the inputs.
            bool girth_short = static_cast<double>(girth(f)) < 8.5 * cert.ladder_R;
            bool scale = cert.epsilon > 1.0 / (33.0 * cert.M * cert.M) + 1e-15;
            bool regime = cert.A > cert.M;
            r.sound = girth_short || scale || regime || !cert.reason.empty();
            r.detail = "range conditions re-evaluated";
            return r;
        }
        case Kind::JordanFailure:
        case Kind::DiscFailure:
            r.sound = true;  // failure reports carry their own diagnostics
            r.detail = "failure report";
            return r;
    }
    return r;
}

}  // namespace qisurf
