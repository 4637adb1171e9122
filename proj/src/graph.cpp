#include "qisurf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace qisurf {

namespace {

// Bounded sampler with explicit arithmetic so results do not depend on the
// standard library's distribution implementations.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw Error("rng_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n) return false;
    const auto& a = adj[u];
    return std::find(a.begin(), a.end(), v) != a.end();
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw Error("add_edge: self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error("add_edge: vertex out of range");
    if (has_edge(u, v)) throw Error("add_edge: parallel edge");
    edges.emplace_back(std::min(u, v), std::max(u, v));
    adj[u].push_back(v);
    adj[v].push_back(u);
}

void Graph::sort_adjacency() {
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::sort(edges.begin(), edges.end());
}

bool Graph::is_connected() const {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push_back(w);
            }
        }
    }
    return count == n;
}

bool Graph::is_regular(int k) const {
    for (int v = 0; v < n; ++v)
        if (degree(v) != k) return false;
    return true;
}

void Graph::validate() const {
    std::size_t deg_sum = 0;
    for (int v = 0; v < n; ++v) {
        deg_sum += adj[v].size();
        std::set<int> seen;
        for (int w : adj[v]) {
            if (w == v) throw Error("validate: self-loop at " + std::to_string(v));
            if (w < 0 || w >= n) throw Error("validate: neighbor out of range");
            if (!seen.insert(w).second) throw Error("validate: parallel edge at " + std::to_string(v));
            if (std::find(adj[w].begin(), adj[w].end(), v) == adj[w].end())
                throw Error("validate: asymmetric adjacency");
        }
    }
    if (deg_sum != 2 * edges.size()) throw Error("validate: edge count mismatch");
    for (auto [u, v] : edges) {
        if (u >= v) throw Error("validate: non-canonical edge");
        if (!has_edge(u, v)) throw Error("validate: edge missing from adjacency");
    }
}

int Graph::edge_index(int u, int v) const {
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i] == key) return static_cast<int>(i);
    return -1;
}

int moore_bound_degree4(int g) {
    if (g < 3) throw Error("moore_bound_degree4: girth must be >= 3");
    if (g % 2 == 1) {
        int r = (g - 1) / 2;
        long long pw = 1;
        for (int i = 0; i < r; ++i) pw *= 3;
        long long b = 1 + 2 * (pw - 1);
        return static_cast<int>(std::min<long long>(b, std::numeric_limits<int>::max()));
    }
    int r = g / 2;
    long long pw = 1;
    for (int i = 0; i < r; ++i) pw *= 3;
    return static_cast<int>(std::min<long long>(pw - 1, std::numeric_limits<int>::max()));
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.n, kUnreachable);
    std::deque<int> q{source};
    dist[source] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.adj[v]) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

namespace {

// One BFS rooted at r. Returns the shortest closure value found
// (dist[u]+dist[v]+1 over non-tree edges) and appends the closing edges that
// attain `record` to `attaining` when requested.
int girth_from_root(const Graph& g, int r, int cap, int record,
                    std::vector<std::pair<int, int>>* attaining) {
    std::vector<int> dist(g.n, -1), parent(g.n, -1);
    std::deque<int> q{r};
    dist[r] = 0;
    int best = kNoCycle;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (2 * dist[v] >= cap && cap != kNoCycle) break;
        for (int w : g.adj[v]) {
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                q.push_back(w);
            } else if (w != parent[v] && (parent[w] != v)) {
                int cand = dist[v] + dist[w] + 1;
                if (cand < best) best = cand;
                if (attaining && cand == record && v < w) attaining->emplace_back(v, w);
            }
        }
    }
    return best;
}

}  // namespace

int girth(const Graph& g) {
    int best = kNoCycle;
    for (int r = 0; r < g.n; ++r)
        best = std::min(best, girth_from_root(g, r, best, -1, nullptr));
    return best;
}

namespace {

Graph random_pairing_graph(int n, std::mt19937_64& rng, int attempts) {
    for (int t = 0; t < attempts; ++t) {
        std::vector<int> stubs;
        stubs.reserve(4 * n);
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < 4; ++k) stubs.push_back(v);
        shuffle_vec(stubs, rng);
        Graph g(n);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || g.has_edge(u, v)) {
                ok = false;
                break;
            }
            g.add_edge(u, v);
        }
        if (!ok) continue;
        // Merge components with degree-preserving swaps.
        int guard = 8 * n;
        while (!g.is_connected() && guard-- > 0) {
            std::vector<int> comp(g.n, -1);
            int nc = 0;
            for (int v = 0; v < g.n; ++v) {
                if (comp[v] != -1) continue;
                std::deque<int> q{v};
                comp[v] = nc;
                while (!q.empty()) {
                    int x = q.front();
                    q.pop_front();
                    for (int w : g.adj[x])
                        if (comp[w] == -1) {
                            comp[w] = nc;
                            q.push_back(w);
                        }
                }
                ++nc;
            }
            std::vector<std::size_t> e0, e1;
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                if (comp[g.edges[i].first] == 0) e0.push_back(i);
                else if (comp[g.edges[i].first] == 1) e1.push_back(i);
            }
            if (e0.empty() || e1.empty()) break;
            auto [a, b] = g.edges[e0[rng_below(rng, e0.size())]];
            auto [c, d] = g.edges[e1[rng_below(rng, e1.size())]];
            if (g.has_edge(a, c) || g.has_edge(b, d)) continue;
            Graph h(g.n);
            for (auto [u, v] : g.edges) {
                if ((u == a && v == b) || (u == c && v == d)) continue;
                h.add_edge(u, v);
            }
            h.add_edge(a, c);
            h.add_edge(b, d);
            g = std::move(h);
        }
        if (g.is_connected()) {
            g.sort_adjacency();
            return g;
        }
    }
    throw Error("random_pairing_graph: no simple connected pairing found");
}

// Scratch space for capped searches with O(touched) resets.
struct Scratch {
    std::vector<int> dist;
    std::vector<int> touched;
    void ensure(int n) {
        if (static_cast<int>(dist.size()) < n) dist.assign(n, -1);
    }
    void reset() {
        for (int v : touched) dist[v] = -1;
        touched.clear();
    }
};

// BFS out to `cap` hops, skipping up to two banned undirected edges.
void capped_bfs(const Graph& g, int src, int cap, Scratch& sc,
                std::pair<int, int> ban1 = {-1, -1}, std::pair<int, int> ban2 = {-1, -1}) {
    sc.ensure(g.n);
    sc.reset();
    auto banned = [&](int a, int b) {
        auto p = std::minmax(a, b);
        return (p.first == ban1.first && p.second == ban1.second) ||
               (p.first == ban2.first && p.second == ban2.second);
    };
    std::deque<int> q{src};
    sc.dist[src] = 0;
    sc.touched.push_back(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (sc.dist[v] >= cap) continue;
        for (int w : g.adj[v]) {
            if (banned(v, w)) continue;
            if (sc.dist[w] == -1) {
                sc.dist[w] = sc.dist[v] + 1;
                sc.touched.push_back(w);
                q.push_back(w);
            }
        }
    }
}

// Counts simple paths s -> t of exactly `len` edges, pruned by a distance
// field to t (computed in the same graph minus the same bans). `via` when
// set also reports how many of those paths use that undirected edge.
struct PathCounter {
    const Graph& g;
    Scratch dist_to_t;
    std::vector<char> used;
    std::pair<int, int> ban1, ban2, via;
    long long total = 0, through_via = 0;

    PathCounter(const Graph& g_) : g(g_) {}

    bool banned(int a, int b) const {
        auto p = std::minmax(a, b);
        return (p.first == ban1.first && p.second == ban1.second) ||
               (p.first == ban2.first && p.second == ban2.second);
    }
    bool is_via(int a, int b) const {
        auto p = std::minmax(a, b);
        return p.first == via.first && p.second == via.second;
    }

    void dfs(int v, int t, int remaining, bool via_used) {
        if (remaining == 0) {
            if (v == t) {
                ++total;
                if (via_used) ++through_via;
            }
            return;
        }
        for (int w : g.adj[v]) {
            if (used[w]) continue;
            if (banned(v, w)) continue;
            if (sc_dist(w) < 0 || sc_dist(w) > remaining - 1) continue;
            if (w == t && remaining != 1) continue;
            used[w] = 1;
            dfs(w, t, remaining - 1, via_used || is_via(v, w));
            used[w] = 0;
        }
    }
    int sc_dist(int v) const { return dist_to_t.dist[v]; }

    // paths of exactly len edges from s to t avoiding ban1/ban2
    void run(int s, int t, int len) {
        total = through_via = 0;
        capped_bfs(g, t, len, dist_to_t, ban1, ban2);
        if (sc_dist(s) < 0 || sc_dist(s) > len) return;
        used.assign(g.n, 0);
        used[s] = 1;
        dfs(s, t, len, false);
        used[s] = 0;
    }
};

// Number of g-cycles through undirected edge e, optionally also reporting
// how many pass through `via` as well.
long long cycles_through(const Graph& g, std::pair<int, int> e, int girth_now,
                         std::pair<int, int> via, long long* both) {
    PathCounter pc(g);
    pc.ban1 = e;
    pc.ban2 = {-1, -1};
    pc.via = via;
    pc.run(e.first, e.second, girth_now - 1);
    if (both) *both = pc.through_via;
    return pc.total;
}

long long count_cycles_of_length(const Graph& g, int len) {
    long long total = 0;
    for (auto e : g.edges) total += cycles_through(g, e, len, {-1, -1}, nullptr);
    if (total % len != 0) throw Error("count_cycles_of_length: inconsistent tally");
    return total / len;
}

// Closing edges of shortest cycles, used as rewiring targets.
std::vector<std::pair<int, int>> shortest_cycle_edges(const Graph& g, int girth_now) {
    std::set<std::pair<int, int>> hot;
    for (int r = 0; r < g.n; ++r) {
        std::vector<std::pair<int, int>> att;
        girth_from_root(g, r, kNoCycle, girth_now, &att);
        hot.insert(att.begin(), att.end());
    }
    return {hot.begin(), hot.end()};
}

// Rebuild with (a,b),(c,d) replaced by (a,c),(b,d); no validity re-checks.
Graph swapped_graph(const Graph& g, int a, int b, int c, int d) {
    Graph h(g.n);
    h.edges.reserve(g.edges.size());
    auto rm1 = std::minmax(a, b), rm2 = std::minmax(c, d);
    for (auto [u, v] : g.edges) {
        auto p = std::minmax(u, v);
        if (p == rm1 || p == rm2) continue;
        h.edges.emplace_back(p.first, p.second);
    }
    h.edges.emplace_back(std::min(a, c), std::max(a, c));
    h.edges.emplace_back(std::min(b, d), std::max(b, d));
    for (auto [u, v] : h.edges) {
        h.adj[u].push_back(v);
        h.adj[v].push_back(u);
    }
    return h;
}

struct SwapEval {
    bool feasible = false;
    long long delta = 0;  // change in the count of girth-length cycles
    int a, b, c, d;       // rewiring: remove (a,b),(c,d); add (a,c),(b,d)
};

// Exact local effect of a 2-opt rewiring on the number of shortest cycles.
// Rejects rewirings that would create a cycle shorter than the current girth.
SwapEval evaluate_swap(const Graph& g, int girth_now, std::pair<int, int> e,
                       std::pair<int, int> f, int variant, Scratch& sc) {
    SwapEval ev;
    auto [a, b] = e;
    auto [c, d] = f;
    if (variant == 1) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) return ev;
    if (g.has_edge(a, c) || g.has_edge(b, d)) return ev;

    // New cycles shorter than girth_now would need a path of fewer than
    // girth_now-1 edges between the ends of a new edge in G - e - f.
    capped_bfs(g, a, girth_now - 2, sc, e, f);
    if (sc.dist[c] != -1) return ev;
    capped_bfs(g, b, girth_now - 2, sc, e, f);
    if (sc.dist[d] != -1) return ev;

    long long both_old = 0;
    long long via_e = cycles_through(g, {std::min(a, b), std::max(a, b)}, girth_now,
                                     {std::min(c, d), std::max(c, d)}, &both_old);
    long long via_f = cycles_through(g, {std::min(c, d), std::max(c, d)}, girth_now, {-1, -1}, nullptr);

    // Count new shortest cycles in the rewired graph.
    Graph h = swapped_graph(g, a, b, c, d);
    long long both_new = 0;
    long long via_n1 = cycles_through(h, {std::min(a, c), std::max(a, c)}, girth_now,
                                      {std::min(b, d), std::max(b, d)}, &both_new);
    long long via_n2 = cycles_through(h, {std::min(b, d), std::max(b, d)}, girth_now, {-1, -1}, nullptr);

    ev.feasible = true;
    ev.delta = (via_n1 + via_n2 - both_new) - (via_e + via_f - both_old);
    ev.a = a;
    ev.b = b;
    ev.c = c;
    ev.d = d;
    return ev;
}

void apply_swap(Graph& g, const SwapEval& ev) {
    Graph h = swapped_graph(g, ev.a, ev.b, ev.c, ev.d);
    h.sort_adjacency();
    g = std::move(h);
}

// Girth-raising 2-opt walk: destroy shortest cycles one rewiring at a time,
// tracking the exact count of girth-length cycles.
bool raise_girth_by_swaps(Graph& g, int target, std::mt19937_64& rng, int budget) {
    Scratch sc;
    int cur_girth = girth(g);
    if (cur_girth >= target) return true;
    long long count = count_cycles_of_length(g, cur_girth);
    std::vector<std::pair<int, int>> hot = shortest_cycle_edges(g, cur_girth);
    int stall = 0;
    const int tries_per_move = 10;
    while (cur_girth < target && stall < budget) {
        if (count <= 0) {
            cur_girth = girth(g);
            if (cur_girth >= target) return true;
            count = count_cycles_of_length(g, cur_girth);
            hot = shortest_cycle_edges(g, cur_girth);
            continue;
        }
        // Pick a live edge on a shortest cycle.
        std::pair<int, int> e{-1, -1};
        while (!hot.empty()) {
            std::size_t k = rng_below(rng, hot.size());
            auto cand = hot[k];
            if (g.has_edge(cand.first, cand.second) &&
                cycles_through(g, cand, cur_girth, {-1, -1}, nullptr) > 0) {
                e = cand;
                break;
            }
            hot.erase(hot.begin() + static_cast<long>(k));
        }
        if (e.first < 0) {
            hot = shortest_cycle_edges(g, cur_girth);
            if (hot.empty()) {
                count = 0;
                continue;
            }
            ++stall;
            continue;
        }
        bool have = false;
        SwapEval best;
        for (int t = 0; t < tries_per_move; ++t) {
            std::size_t ej = rng_below(rng, g.edges.size());
            auto f = g.edges[ej];
            if (f == e) continue;
            int variant = static_cast<int>(rng_below(rng, 2));
            SwapEval ev = evaluate_swap(g, cur_girth, e, f, variant, sc);
            if (!ev.feasible) continue;
            if (!have || ev.delta < best.delta) {
                have = true;
                best = ev;
            }
            if (have && best.delta < 0) break;
        }
        if (!have) {
            ++stall;
            continue;
        }
        bool sideways = best.delta == 0 && rng_below(rng, 2) == 0;
        if (best.delta < 0 || sideways) {
            Graph backup = g;
            apply_swap(g, best);
            if (!g.is_connected()) {
                g = std::move(backup);
                ++stall;
                continue;
            }
            count += best.delta;
        }
        stall = best.delta < 0 ? 0 : stall + 1;
    }
    return girth(g) >= target;
}

}  // namespace

Graph generate_regular_high_girth(const GenParams& params) {
    if (params.degree != 4) throw Error("generate_regular_high_girth: degree is fixed at 4");
    if (params.girth_target < 3) throw Error("generate_regular_high_girth: girth_target must be >= 3");
    const int moore = moore_bound_degree4(params.girth_target);
    if (params.size_hint < moore)
        throw Error("generate_regular_high_girth: size_hint " + std::to_string(params.size_hint) +
                    " below Moore bound " + std::to_string(moore) + " for girth " +
                    std::to_string(params.girth_target));
    std::mt19937_64 rng(params.rng_seed);

    const int budget = 300 + 500 * std::max(0, params.girth_target - 6);
    for (int restart = 0; restart < std::max(1, params.max_restarts); ++restart) {
        Graph g = random_pairing_graph(params.size_hint, rng, 2000);
        if (raise_girth_by_swaps(g, params.girth_target, rng, budget)) {
            g.validate();
            if (!g.is_connected() || !g.is_regular(4) || girth(g) < params.girth_target)
                throw Error("generate_regular_high_girth: postcondition failed");
            return g;
        }
    }
    throw Error("generate_regular_high_girth: restarts exhausted (girth " +
                std::to_string(params.girth_target) + ", size_hint " +
                std::to_string(params.size_hint) + ")");
}

std::vector<int> neighborhood_ball(const Graph& g, const std::vector<int>& centers, double t) {
    for (int c : centers)
        if (c < 0 || c >= g.n) throw Error("neighborhood_ball: center out of range");
    const int hops = t < 0 ? -1 : static_cast<int>(std::floor(t));
    std::vector<int> dist(g.n, -1);
    std::deque<int> q;
    for (int c : centers) {
        if (dist[c] != 0) {
            dist[c] = 0;
            q.push_back(c);
        }
    }
    std::vector<int> out;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        out.push_back(v);
        if (dist[v] >= hops) continue;
        for (int w : g.adj[v]) {
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClosedWalk eulerian_circuit(const Graph& g) {
    if (g.n == 0) throw Error("eulerian_circuit: empty graph");
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) % 2 != 0) throw Error("eulerian_circuit: odd degree at " + std::to_string(v));
    if (!g.is_connected()) throw Error("eulerian_circuit: graph not connected");

    // Hierholzer with the lowest-index unused edge first; deterministic.
    std::vector<std::vector<std::pair<int, int>>> inc(g.n);  // (neighbor, edge id)
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [u, v] = g.edges[i];
        inc[u].emplace_back(v, static_cast<int>(i));
        inc[v].emplace_back(u, static_cast<int>(i));
    }
    for (auto& lst : inc) std::sort(lst.begin(), lst.end());
    std::vector<char> used(g.edges.size(), 0);
    std::vector<std::size_t> next(g.n, 0);
    std::vector<int> stack{0}, circuit;
    while (!stack.empty()) {
        int v = stack.back();
        while (next[v] < inc[v].size() && used[inc[v][next[v]].second]) ++next[v];
        if (next[v] == inc[v].size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            auto [w, e] = inc[v][next[v]];
            used[e] = 1;
            stack.push_back(w);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (circuit.size() != g.edges.size() + 1)
        throw Error("eulerian_circuit: traversal failed to cover all edges");
    return ClosedWalk{std::move(circuit)};
}

CycleDecomposition cycle_decomposition(const Graph& g) {
    if (!g.is_regular(4)) throw Error("cycle_decomposition: graph must be 4-regular");
    ClosedWalk walk = eulerian_circuit(g);

    CycleDecomposition dec;
    std::vector<int> on_stack_pos(g.n, -1);
    std::vector<int> stack;
    auto push_cycle = [&](int from_pos) {
        std::vector<int> cyc(stack.begin() + from_pos, stack.end());
        stack.resize(from_pos + 1);
        dec.cycles.push_back(std::move(cyc));
    };
    for (std::size_t i = 0; i + 1 < walk.vertices.size(); ++i) {
        int v = walk.vertices[i];
        if (on_stack_pos[v] >= 0) {
            int from = on_stack_pos[v];
            for (std::size_t k = from + 1; k < stack.size(); ++k) on_stack_pos[stack[k]] = -1;
            push_cycle(from);
        } else {
            on_stack_pos[v] = static_cast<int>(stack.size());
            stack.push_back(v);
        }
    }
    // The circuit closes at its start; whatever remains on the stack is the
    // final cycle.
    if (stack.size() >= 3) {
        dec.cycles.emplace_back(stack.begin(), stack.end());
    } else if (stack.size() > 1) {
        throw Error("cycle_decomposition: leftover walk is not a cycle");
    }

    dec.vertex_cycles.assign(g.n, {-1, -1});
    for (std::size_t c = 0; c < dec.cycles.size(); ++c) {
        for (int v : dec.cycles[c]) {
            auto& pr = dec.vertex_cycles[v];
            if (pr.first == -1) pr.first = static_cast<int>(c);
            else if (pr.second == -1) pr.second = static_cast<int>(c);
            else throw Error("cycle_decomposition: vertex on more than two cycles");
        }
    }
    for (int v = 0; v < g.n; ++v) {
        auto pr = dec.vertex_cycles[v];
        if (pr.first == -1 || pr.second == -1 || pr.first == pr.second)
            throw Error("cycle_decomposition: vertex not on exactly two distinct cycles");
    }
    return dec;
}

int cycle_distance(const std::vector<int>& cycle, int pos_a, int pos_b) {
    int L = static_cast<int>(cycle.size());
    int d = std::abs(pos_a - pos_b) % L;
    return std::min(d, L - d);
}

}  // namespace qisurf
