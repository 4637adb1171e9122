#include "qisurf/qi.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <random>
#include <set>

namespace qisurf {

namespace {

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

void EmbeddedGraph::build_index(int mesh_nv) {
    adj.assign(skel_vertices.size(), {});
    for (std::size_t e = 0; e < skel_edges.size(); ++e) {
        auto [a, b] = skel_edges[e];
        adj[a].emplace_back(b, static_cast<int>(e));
        adj[b].emplace_back(a, static_cast<int>(e));
    }
    mesh_to_skel.assign(mesh_nv, -1);
    for (std::size_t i = 0; i < skel_vertices.size(); ++i) mesh_to_skel[skel_vertices[i]] = static_cast<int>(i);
}

void EmbeddedGraph::validate(const SurfaceMesh& mesh) const {
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < skel_edges.size(); ++e) {
        auto [a, b] = skel_edges[e];
        if (a == b) throw Error("EmbeddedGraph: loop edge");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) throw Error("EmbeddedGraph: parallel edge");
        const auto& r = routes[e];
        if (r.empty() || r.front() != skel_vertices[a] || r.back() != skel_vertices[b])
            throw Error("EmbeddedGraph: route endpoints mismatch");
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            if (mesh.edge_between(r[i], r[i + 1]) < 0) throw Error("EmbeddedGraph: route not a mesh path");
    }
}

EmbeddedGraph build_net(const SurfaceMesh& mesh, double separation, std::uint64_t rng_seed) {
    if (mesh.nv == 0) throw Error("build_net: empty mesh");
    if (separation < 2 * mesh.params.step) throw Error("build_net: separation must be >= 2*step");

    std::mt19937_64 rng(rng_seed);
    std::vector<int> order(mesh.nv);
    for (int i = 0; i < mesh.nv; ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng_below(rng, i)]);

    EmbeddedGraph g;
    g.separation = separation;
    std::vector<char> covered(mesh.nv, 0);
    for (int v : order) {
        if (covered[v]) continue;
        g.skel_vertices.push_back(v);
        auto dist = mesh_dijkstra(mesh, v, separation);
        for (int x = 0; x < mesh.nv; ++x)
            if (dist[x] < separation) covered[x] = 1;
    }
    std::sort(g.skel_vertices.begin(), g.skel_vertices.end());

    // Routes between net points within reach.
    const double reach = 2 * separation + mesh.params.step;
    std::vector<int> net_of(mesh.nv, -1);
    for (std::size_t i = 0; i < g.skel_vertices.size(); ++i) net_of[g.skel_vertices[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < g.skel_vertices.size(); ++i) {
        int src = g.skel_vertices[i];
        // truncated Dijkstra with parents
        std::vector<double> dist(mesh.nv, std::numeric_limits<double>::infinity());
        std::vector<int> prev(mesh.nv, -1);
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        dist[src] = 0;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            if (d > reach) break;
            for (auto [w, e] : mesh.adj[v]) {
                double nd = d + mesh.weights[e];
                if (nd < dist[w]) {
                    dist[w] = nd;
                    prev[w] = v;
                    pq.push({nd, w});
                }
            }
        }
        for (std::size_t j = i + 1; j < g.skel_vertices.size(); ++j) {
            int dst = g.skel_vertices[j];
            if (dist[dst] > reach) continue;
            std::vector<int> route;
            for (int x = dst; x != -1; x = prev[x]) route.push_back(x);
            std::reverse(route.begin(), route.end());
            g.skel_edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            g.routes.push_back(std::move(route));
        }
    }
    g.build_index(mesh.nv);
    return g;
}

EmbeddedGraph identity_skeleton(const SurfaceMesh& mesh) {
    EmbeddedGraph g;
    g.skel_vertices.resize(mesh.nv);
    for (int i = 0; i < mesh.nv; ++i) g.skel_vertices[i] = i;
    g.skel_edges = mesh.edges;
    g.routes.reserve(mesh.edges.size());
    for (auto [u, v] : mesh.edges) g.routes.push_back({u, v});
    g.build_index(mesh.nv);
    return g;
}

EmbeddedGraph single_vertex_skeleton(const SurfaceMesh& mesh, int mesh_vertex) {
    EmbeddedGraph g;
    g.skel_vertices.push_back(mesh_vertex);
    g.build_index(mesh.nv);
    return g;
}

std::vector<int> skeleton_bfs(const EmbeddedGraph& g, int source) {
    std::vector<int> dist(g.size(), kSkelInf);
    std::deque<int> q{source};
    dist[source] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [w, e] : g.adj[v]) {
            if (dist[w] == kSkelInf) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

int skeleton_distance(const EmbeddedGraph& g, int u, int v) {
    if (u < 0 || v < 0 || u >= g.size() || v >= g.size())
        throw Error("skeleton_distance: vertex out of range");
    if (u == v) return 0;
    return skeleton_bfs(g, u)[v];
}

std::string SamplingPlan::name() const {
    switch (kind) {
        case Kind::Exhaustive: return "exhaustive";
        case Kind::RandomSources: return "random:" + std::to_string(source_count);
        case Kind::AnchorBiased: return "anchor:" + std::to_string(source_count);
    }
    return "?";
}

QiReport estimate_qi_constants(const SurfaceMesh& mesh, const EmbeddedGraph& g, double M,
                               const SamplingPlan& plan) {
    if (M < 1) throw Error("estimate_qi_constants: M must be >= 1");
    if (g.size() == 0) throw Error("estimate_qi_constants: empty skeleton");
    QiReport rep;
    rep.M_fixed = M;
    rep.plan = plan.name();

    // Density clause: exact via one multi-source pass.
    MultiSourceField field = mesh_multi_source(mesh, g.skel_vertices);
    for (int x = 0; x < mesh.nv; ++x) {
        if (field.dist[x] > rep.A_density) {
            rep.A_density = field.dist[x];
            rep.density_witness_vertex = x;
        }
    }

    // Source selection.
    std::vector<int> sources;
    if (plan.kind == SamplingPlan::Kind::Exhaustive || plan.source_count >= g.size()) {
        sources.resize(g.size());
        for (int i = 0; i < g.size(); ++i) sources[i] = i;
    } else if (plan.kind == SamplingPlan::Kind::RandomSources) {
        std::mt19937_64 rng(plan.rng_seed);
        std::vector<int> order(g.size());
        for (int i = 0; i < g.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng_below(rng, i)]);
        sources.assign(order.begin(), order.begin() + plan.source_count);
        std::sort(sources.begin(), sources.end());
    } else {  // AnchorBiased: skeleton vertices nearest the embedded graph anchors
        MultiSourceField af = mesh_multi_source(mesh, mesh.anchor);
        std::vector<std::pair<double, int>> ranked;
        for (int i = 0; i < g.size(); ++i) ranked.push_back({af.dist[g.skel_vertices[i]], i});
        std::sort(ranked.begin(), ranked.end());
        for (int i = 0; i < plan.source_count && i < g.size(); ++i) sources.push_back(ranked[i].second);
        std::sort(sources.begin(), sources.end());
    }

    for (int u : sources) {
        auto dmesh = mesh_dijkstra(mesh, g.skel_vertices[u], -1.0);
        auto dskel = skeleton_bfs(g, u);
        for (int v = 0; v < g.size(); ++v) {
            if (v == u) continue;
            double dm = dmesh[g.skel_vertices[v]];
            ++rep.pairs_evaluated;
            double lower_slack =
                dskel[v] == kSkelInf ? std::numeric_limits<double>::infinity() : dskel[v] - M * dm;
            if (lower_slack > rep.A_lower) {
                rep.A_lower = lower_slack;
                rep.lower_witness = {u, v, dm, dskel[v], lower_slack};
            }
            if (dskel[v] != kSkelInf) {
                double upper_slack = dm / M - dskel[v];
                if (upper_slack > rep.A_upper_ineq) {
                    rep.A_upper_ineq = upper_slack;
                    rep.upper_witness = {u, v, dm, dskel[v], upper_slack};
                }
            }
        }
    }
    rep.A_min = std::max({rep.A_lower, rep.A_upper_ineq, rep.A_density});
    return rep;
}

QiCheck check_qi(const SurfaceMesh& mesh, const EmbeddedGraph& g, double M, double A,
                 const SamplingPlan& plan) {
    if (A < 0) throw Error("check_qi: A must be >= 0");
    QiCheck c;
    c.report = estimate_qi_constants(mesh, g, M, plan);
    if (c.report.A_density > A) {
        c.pass = false;
        c.failed_clause = "density";
        c.density_witness_vertex = c.report.density_witness_vertex;
        c.density_value = c.report.A_density;
    } else if (c.report.A_lower > A) {
        c.pass = false;
        c.failed_clause = "lower";
        c.pair_witness = c.report.lower_witness;
    } else if (c.report.A_upper_ineq > A) {
        c.pass = false;
        c.failed_clause = "upper";
        c.pair_witness = c.report.upper_witness;
    }
    return c;
}

}  // namespace qisurf
