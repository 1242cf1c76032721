#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcast {

// Contract violations (bad arguments, malformed input). The CLI maps these
// to exit code 2.
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but exceeds a supported size cap.
struct capability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Undirected edge, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

inline std::string edge_str(const Edge& e) {
    return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

/// Immutable simple undirected graph on dense vertex ids 0..n-1.
/// The edge list is kept lexicographically sorted so that serialization is
/// canonical.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        build_adj();
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }
    int min_degree() const {
        if (n_ == 0) return 0;
        int d = degree(0);
        for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

private:
    void build_adj() {
        adj_.assign(n_, {});
        for (const Edge& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Multigraph: like Graph but edges form a multiset. Intermediate object of
/// the series-parallel constructions; no self-loops allowed.
struct Multigraph {
    int n = 0;
    std::vector<Edge> edges;

    void add_edge(int u, int v) {
        if (u == v) throw contract_error("multigraph: self-loop at " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw contract_error("multigraph: endpoint out of range in " + edge_str(Edge(u, v)));
        edges.emplace_back(u, v);
    }
};

/// Builds a canonical Graph, rejecting self-loops, out-of-range endpoints and
/// duplicate pairs. The error message names the offending pair.
inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& pairs) {
    if (n < 0) throw contract_error("make_graph: negative vertex count");
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        Edge e(a, b);
        if (a == b) throw contract_error("make_graph: self-loop " + edge_str(e));
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw contract_error("make_graph: endpoint out of range " + edge_str(e));
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) throw contract_error("make_graph: duplicate edge " + edge_str(*dup));
    return Graph(n, std::move(edges));
}

/// Collapses every multi-edge to multiplicity one. Idempotent.
inline Graph simplify(const Multigraph& mg) {
    std::vector<Edge> edges = mg.edges;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(mg.n, std::move(edges));
}

namespace detail {

// BFS hop counts with -1 for unreachable; internal helper.
inline std::vector<int> bfs_raw(const Graph& g, int src) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

}  // namespace detail

/// Exact shortest-path hop counts from src. Unreachable vertices are reported
/// as an empty optional rather than a sentinel count.
inline std::vector<std::optional<int>> bfs_distances(const Graph& g, int src) {
    if (src < 0 || src >= g.vertex_count())
        throw contract_error("bfs_distances: source out of range");
    auto raw = detail::bfs_raw(g, src);
    std::vector<std::optional<int>> out(raw.size());
    for (size_t i = 0; i < raw.size(); ++i)
        if (raw[i] >= 0) out[i] = raw[i];
    return out;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    auto d = detail::bfs_raw(g, 0);
    return std::find(d.begin(), d.end(), -1) == d.end();
}

/// Eccentricity of v (max hop distance). Requires connectivity.
inline int eccentricity(const Graph& g, int v) {
    auto d = detail::bfs_raw(g, v);
    int ecc = 0;
    for (int x : d) {
        if (x < 0) throw contract_error("eccentricity: graph is disconnected");
        ecc = std::max(ecc, x);
    }
    return ecc;
}

/// True iff g is connected and has no articulation vertex. Needs n >= 3.
inline bool is_biconnected(const Graph& g) {
    int n = g.vertex_count();
    if (n < 3) throw contract_error("is_biconnected: needs at least 3 vertices");
    if (!is_connected(g)) return false;

    std::vector<int> depth(n, -1), low(n, 0), parent(n, -1);
    // Iterative DFS; keeps an explicit stack of (vertex, neighbor index).
    std::vector<std::pair<int, size_t>> stack;
    depth[0] = 0;
    low[0] = 0;
    stack.emplace_back(0, 0);
    int root_children = 0;
    while (!stack.empty()) {
        auto& [u, idx] = stack.back();
        const auto& nb = g.neighbors(u);
        if (idx < nb.size()) {
            int w = nb[idx++];
            if (depth[w] < 0) {
                depth[w] = depth[u] + 1;
                low[w] = depth[w];
                parent[w] = u;
                if (u == 0) ++root_children;
                stack.emplace_back(w, 0);
            } else if (w != parent[u]) {
                low[u] = std::min(low[u], depth[w]);
            }
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                int p = stack.back().first;
                low[p] = std::min(low[p], low[u]);
                if (p != 0 && low[u] >= depth[p]) return false;  // articulation at p
            }
        }
    }
    return root_children <= 1;
}

namespace detail {

inline bool iso_search(const Graph& g1, const Graph& g2, std::vector<int>& map12,
                       std::vector<int>& map21, int next) {
    int n = g1.vertex_count();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (map21[cand] >= 0) continue;
        if (g1.degree(next) != g2.degree(cand)) continue;
        bool ok = true;
        for (int w : g1.neighbors(next)) {
            if (w < next && !g2.has_edge(cand, map12[w])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            // mapped neighbors of cand must be neighbors of next
            for (int w2 : g2.neighbors(cand)) {
                int pre = map21[w2];
                if (pre >= 0 && !g1.has_edge(next, pre)) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        map12[next] = cand;
        map21[cand] = next;
        if (iso_search(g1, g2, map12, map21, next + 1)) return true;
        map12[next] = -1;
        map21[cand] = -1;
    }
    return false;
}

}  // namespace detail

/// Backtracking isomorphism test, capped at 20 vertices. A test oracle, not a
/// feature: the cap keeps worst-case blowup out of the supported surface.
inline bool is_isomorphic(const Graph& g1, const Graph& g2) {
    if (g1.vertex_count() > 20 || g2.vertex_count() > 20)
        throw capability_error("is_isomorphic: capped at 20 vertices");
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
        return false;
    auto degs = [](const Graph& g) {
        std::vector<int> d;
        for (int v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degs(g1) != degs(g2)) return false;
    std::vector<int> map12(g1.vertex_count(), -1), map21(g1.vertex_count(), -1);
    return detail::iso_search(g1, g2, map12, map21, 0);
}

/// Cyclic neighbor order per vertex. Faces arise by traversal: the edge after
/// arriving at v from u is the successor of u in v's rotation.
struct RotationSystem {
    std::vector<std::vector<int>> order;

    bool empty() const { return order.empty(); }
};

enum class Role { s, t, s_prime, t_prime };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::s: return "s";
        case Role::t: return "t";
        case Role::s_prime: return "s_prime";
        case Role::t_prime: return "t_prime";
    }
    return "?";
}

/// Graph plus vertex roles, optional distance labels (accelerated families)
/// and an optional rotation system. Shortcut edges are kept for rendering.
struct LabeledGraph {
    Graph graph;
    std::map<Role, int> roles;
    std::map<int, int> dist_label;
    std::optional<RotationSystem> rotation;
    std::vector<Edge> shortcut_edges;

    std::optional<int> role_vertex(Role r) const {
        auto it = roles.find(r);
        if (it == roles.end()) return std::nullopt;
        return it->second;
    }
    int require_role(Role r) const {
        auto v = role_vertex(r);
        if (!v) throw contract_error(std::string("graph is missing terminal role ") + role_name(r));
        return *v;
    }
};

inline int ceil_log2(std::uint64_t n) {
    if (n == 0) throw contract_error("ceil_log2: zero");
    int k = 0;
    std::uint64_t p = 1;
    while (p < n) {
        p <<= 1;
        ++k;
    }
    return k;
}

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace bcast
