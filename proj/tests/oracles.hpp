#pragma once

// Independent brute-force oracles used to freeze expected values. These stay
// deliberately naive and separate from the library implementations.

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "qisurf/graph.hpp"
#include "qisurf/mesh.hpp"
#include "qisurf/rotation.hpp"

namespace oracles {

using qisurf::Graph;
using qisurf::RotationSystem;

// Shortest cycle by depth-bounded DFS over canonical starts.
inline int brute_girth(const Graph& g) {
    for (int target = 3; target <= g.n; ++target) {
        for (int s = 0; s < g.n; ++s) {
            std::vector<char> used(g.n, 0);
            used[s] = 1;
            bool found = false;
            // hops counts edges walked from s; a cycle of length `target`
            // closes back to s after target-1 hops plus the closing edge.
            auto dfs2 = [&](auto&& self, int v, int hops) -> void {
                if (found) return;
                if (hops == target - 1) {
                    if (g.has_edge(v, s)) found = true;
                    return;
                }
                for (int w : g.adj[v]) {
                    if (w <= s || used[w]) continue;
                    used[w] = 1;
                    self(self, w, hops + 1);
                    used[w] = 0;
                }
            };
            dfs2(dfs2, s, 0);
            if (found) return target;
        }
    }
    return qisurf::kNoCycle;
}

// All-pairs shortest paths on an explicit weighted graph.
inline std::vector<std::vector<double>> floyd_warshall(int nv,
                                                       const std::vector<std::pair<int, int>>& edges,
                                                       const std::vector<double>& w) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(nv, std::vector<double>(nv, inf));
    for (int i = 0; i < nv; ++i) d[i][i] = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        d[u][v] = std::min(d[u][v], w[e]);
        d[v][u] = std::min(d[v][u], w[e]);
    }
    for (int k = 0; k < nv; ++k)
        for (int i = 0; i < nv; ++i) {
            if (d[i][k] == inf) continue;
            for (int j = 0; j < nv; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
        }
    return d;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    g.sort_adjacency();
    return g;
}

inline Graph complete_bipartite_4_4() {
    Graph g(8);
    for (int i = 0; i < 4; ++i)
        for (int j = 4; j < 8; ++j) g.add_edge(i, j);
    g.sort_adjacency();
    return g;
}

inline Graph circulant(int n, int a, int b) {
    Graph g(n);
    for (int v = 0; v < n; ++v) {
        if (!g.has_edge(v, (v + a) % n)) g.add_edge(v, (v + a) % n);
        if (!g.has_edge(v, (v + b) % n)) g.add_edge(v, (v + b) % n);
    }
    g.sort_adjacency();
    return g;
}

// Square-grid torus with the flat rotation (E, S, W, N): genus 1.
inline RotationSystem torus_rotation(int rows, int cols) {
    Graph g(rows * cols);
    auto id = [&](int r, int c) { return ((r + rows) % rows) * cols + (c + cols) % cols; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (!g.has_edge(id(r, c), id(r, c + 1))) g.add_edge(id(r, c), id(r, c + 1));
            if (!g.has_edge(id(r, c), id(r + 1, c))) g.add_edge(id(r, c), id(r + 1, c));
        }
    g.sort_adjacency();
    RotationSystem rs;
    rs.graph = g;
    rs.rot.assign(g.n, {});
    auto dart_to = [&](int v, int w) {
        int e = g.edge_index(v, w);
        return 2 * e + (g.edges[e].first == v ? 0 : 1);
    };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = id(r, c);
            rs.rot[v] = {dart_to(v, id(r, c + 1)), dart_to(v, id(r + 1, c)),
                         dart_to(v, id(r, c - 1)), dart_to(v, id(r - 1, c))};
        }
    rs.validate();
    return rs;
}

// Enumerates simple cycles up to a hop bound (canonical starts) and returns
// the minimum weighted length over those failing is_contractible.
inline qisurf::SystoleResult brute_noncontractible(const RotationSystem& rs,
                                                   const std::vector<double>& w,
                                                   int max_hops) {
    qisurf::SystoleResult best;
    double best_len = std::numeric_limits<double>::infinity();
    const Graph& g = rs.graph;
    std::vector<int> path;
    std::vector<char> used(g.n, 0);
    auto consider = [&](const std::vector<int>& cyc) {
        double len = 0;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            len += w[g.edge_index(cyc[i], cyc[(i + 1) % cyc.size()])];
        if (len >= best_len) return;
        if (!qisurf::is_contractible(rs, cyc)) {
            best_len = len;
            best.exists = true;
            best.length = len;
            best.cycle = cyc;
        }
    };
    auto dfs = [&](auto&& self, int v) -> void {
        if (static_cast<int>(path.size()) > max_hops) return;
        for (int nb : g.adj[v]) {
            if (nb == path.front() && path.size() >= 3) consider(path);
            if (used[nb] || nb < path.front()) continue;
            if (path.size() >= 2 && nb == path.front()) continue;
            used[nb] = 1;
            path.push_back(nb);
            self(self, nb);
            path.pop_back();
            used[nb] = 0;
        }
    };
    for (int s = 0; s < g.n; ++s) {
        path = {s};
        std::fill(used.begin(), used.end(), 0);
        used[s] = 1;
        dfs(dfs, s);
    }
    return best;
}

}  // namespace oracles
