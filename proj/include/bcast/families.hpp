#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <set>

#include "bcast/graph.hpp"
#include "bcast/planarity.hpp"

namespace bcast {

/// Binomial-tree view: parent links plus, per vertex, the dimension of the
/// maximal binomial subtree rooted there and the construction step at which
/// the vertex appeared.
struct RootedTree {
    int root = 0;
    std::vector<int> parent;         // -1 at the root
    std::vector<int> subtree_dim;
    std::vector<int> creation_step;

    int dim() const { return subtree_dim[root]; }
    int size() const { return static_cast<int>(parent.size()); }
};

// Canonical binomial labels: vertex x in [0, 2^k), parent clears the lowest
// set bit, root 0. Children of x are x + 2^i for i below x's dimension.
namespace btl {

inline int parent(int x) { return x & (x - 1); }
inline int dim_of(int x, int k) {
    return x == 0 ? k : std::countr_zero(static_cast<unsigned>(x));
}
inline int creation_step(int x, int k) { return x == 0 ? 0 : k - dim_of(x, k); }
inline int tree_depth(int x) { return std::popcount(static_cast<unsigned>(x)); }

// children in strictly decreasing subtree dimension
inline std::vector<int> children(int x, int k) {
    std::vector<int> out;
    for (int i = dim_of(x, k) - 1; i >= 0; --i) out.push_back(x + (1 << i));
    return out;
}

// root of the dimension-d subtree containing x
inline int enclosing_root(int x, int d) { return x & ~((1 << d) - 1); }

}  // namespace btl

inline RootedTree binomial_rooted_tree(int k) {
    int n = 1 << k;
    RootedTree t;
    t.root = 0;
    t.parent.assign(n, -1);
    t.subtree_dim.assign(n, 0);
    t.creation_step.assign(n, 0);
    t.subtree_dim[0] = k;
    for (int x = 1; x < n; ++x) {
        t.parent[x] = btl::parent(x);
        t.subtree_dim[x] = btl::dim_of(x, k);
        t.creation_step[x] = btl::creation_step(x, k);
    }
    return t;
}

struct BinomialTreeFamily {
    LabeledGraph graph;
    RootedTree tree;
};

/// BT_k on 2^k vertices: 0 is the root, the parent of x clears x's lowest set
/// bit.
inline BinomialTreeFamily binomial_tree(int k) {
    if (k < 0) throw contract_error("binomial_tree: k must be >= 0");
    if (k > 25) throw capability_error("binomial_tree: k too large");
    int n = 1 << k;
    std::vector<Edge> edges;
    for (int x = 1; x < n; ++x) edges.emplace_back(x, btl::parent(x));
    BinomialTreeFamily fam;
    fam.graph.graph = Graph(n, std::move(edges));
    fam.graph.roles[Role::s] = 0;
    fam.tree = binomial_rooted_tree(k);
    return fam;
}

// ---------------------------------------------------------------------------
// Mirrored-binomial family
// ---------------------------------------------------------------------------

/// MB_k structure. The graph splits into two spanning binomial trees of
/// dimension k-1: the one rooted at s (with s' as its second root) and the one
/// rooted at t (second root t'), joined by a perfect matching between their
/// leaves. Both trees carry canonical binomial labels.
struct MbFamily {
    LabeledGraph graph;
    int k = 0;
    int s = 0, s_prime = 0, t = 0, t_prime = 0;
    std::vector<int> u_label, d_label;  // id -> label, -1 when not in that tree
    std::vector<int> u_id, d_id;        // label -> id
    std::vector<int> partner;           // leaf matching by id, -1 elsewhere
    std::vector<int> swap_perm;         // copy-exchange automorphism, s<->s' t<->t' (k >= 3)
    std::vector<int> rev_perm;          // reversal automorphism, s<->t s'<->t'
    std::vector<int> flip_perm;         // s<->t' s'<->t automorphism (k >= 3)
};

inline MbFamily mirrored_binomial(int k) {
    if (k < 2) throw contract_error("mirrored_binomial: k must be >= 2");
    if (k > 20) throw capability_error("mirrored_binomial: k too large");
    if (k == 2) {
        MbFamily f;
        f.k = 2;
        f.graph.graph = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
        f.s = 0;
        f.s_prime = 1;
        f.t_prime = 2;
        f.t = 3;
        f.graph.roles = {{Role::s, 0}, {Role::s_prime, 1}, {Role::t_prime, 2}, {Role::t, 3}};
        f.u_label = {0, 1, -1, -1};
        f.d_label = {-1, -1, 1, 0};
        f.u_id = {0, 1};
        f.d_id = {3, 2};
        f.partner = {-1, 2, 1, -1};
        f.rev_perm = {3, 2, 1, 0};
        // the 4-path has no s<->t' automorphism; k=2 schedules are built
        // per terminal instead
        return f;
    }

    MbFamily r = mirrored_binomial(k - 1);
    int h = 1 << (k - 1);
    int q = 1 << (k - 2);  // label offset for the joined halves
    MbFamily f;
    f.k = k;

    std::vector<Edge> edges = r.graph.graph.edges();
    for (const Edge& e : r.graph.graph.edges()) edges.emplace_back(e.u + h, e.v + h);
    edges.emplace_back(r.s, r.s + h);
    edges.emplace_back(r.t, r.t + h);
    f.graph.graph = Graph(2 * h, std::move(edges));

    f.s = r.s;
    f.s_prime = r.s + h;
    f.t = r.t + h;
    f.t_prime = r.t;
    f.graph.roles = {{Role::s, f.s}, {Role::s_prime, f.s_prime}, {Role::t, f.t},
                     {Role::t_prime, f.t_prime}};

    f.u_label.assign(2 * h, -1);
    f.d_label.assign(2 * h, -1);
    f.u_id.assign(h, -1);
    f.d_id.assign(h, -1);
    for (int v = 0; v < h; ++v) {
        // right copy keeps its U labels; its D tree becomes the far half of D
        if (r.u_label[v] >= 0) f.u_label[v] = r.u_label[v];
        if (r.d_label[v] >= 0) f.d_label[v] = r.d_label[v] + q;
        // left copy: U labels shift, D labels stay (t lives there)
        if (r.u_label[v] >= 0) f.u_label[v + h] = r.u_label[v] + q;
        if (r.d_label[v] >= 0) f.d_label[v + h] = r.d_label[v];
    }
    for (int v = 0; v < 2 * h; ++v) {
        if (f.u_label[v] >= 0) f.u_id[f.u_label[v]] = v;
        if (f.d_label[v] >= 0) f.d_id[f.d_label[v]] = v;
    }

    f.partner.assign(2 * h, -1);
    for (int v = 0; v < h; ++v) {
        if (r.partner[v] >= 0) {
            f.partner[v] = r.partner[v];
            f.partner[v + h] = r.partner[v] + h;
        }
    }

    f.swap_perm.assign(2 * h, 0);
    for (int v = 0; v < 2 * h; ++v) f.swap_perm[v] = v < h ? v + h : v - h;
    // reversing MB_k exchanges the copies and reverses each; reversing only
    // inside the copies swaps s with t' instead
    f.rev_perm.assign(2 * h, 0);
    f.flip_perm.assign(2 * h, 0);
    for (int v = 0; v < h; ++v) {
        f.rev_perm[v] = r.rev_perm[v] + h;
        f.rev_perm[v + h] = r.rev_perm[v];
        f.flip_perm[v] = r.rev_perm[v];
        f.flip_perm[v + h] = r.rev_perm[v] + h;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Binomial SP graph B_k and the accelerated variant AB_k
// ---------------------------------------------------------------------------

struct BinomialSpFamily {
    LabeledGraph graph;
    RootedTree tree;
    int s = 0, t = 0;
};

/// B_k: BT_k rooted at s plus a universal vertex t adjacent to every tree
/// vertex. 2^k + 1 vertices; t carries the last id.
inline BinomialSpFamily binomial_sp(int k) {
    if (k < 0) throw contract_error("binomial_sp: k must be >= 0");
    if (k > 20) throw capability_error("binomial_sp: k too large");
    int n = 1 << k;
    std::vector<Edge> edges;
    for (int x = 1; x < n; ++x) edges.emplace_back(x, btl::parent(x));
    for (int x = 0; x < n; ++x) edges.emplace_back(x, n);
    BinomialSpFamily fam;
    fam.graph.graph = Graph(n + 1, std::move(edges));
    fam.s = 0;
    fam.t = n;
    fam.graph.roles = {{Role::s, 0}, {Role::t, n}};
    fam.tree = binomial_rooted_tree(k);
    return fam;
}

struct AbFamily {
    LabeledGraph graph;
    RootedTree tree;
    int k = 0;
    int s = 0, t = 0;               // t = -1 in the t-removed variant
    std::vector<int> label;         // per id; t gets its true distance 1
    std::vector<int> chain_next;    // next vertex toward s along decreasing labels
    std::vector<Edge> shortcuts;
};

/// AB_k: B_k with shortcut edges added level by level. The tree decomposes
/// into a hierarchy of clusters of dimension at most 3 (the deepest recursion
/// level spans ((k-1) mod 3)+1 construction steps, every level below spans
/// three); each cluster vertex is joined to its cluster root, the deepest
/// ancestor whose label is one less than its own, unless the tree edge is
/// already there. Every vertex then reaches s along a decreasing-label chain
/// of length exactly its label, at most ceil(k/3) -- and the same holds
/// inside every aligned subtree, which is what the composed planar scheme
/// leans on.
inline AbFamily accelerated_binomial(int k) {
    if (k < 0) throw contract_error("accelerated_binomial: k must be >= 0");
    if (k > 16) throw capability_error("accelerated_binomial: k too large");
    int n = 1 << k;
    AbFamily fam;
    fam.k = k;
    fam.s = 0;
    fam.t = n;
    fam.label.assign(n + 1, 0);
    fam.chain_next.assign(n + 1, -1);
    fam.label[n] = 1;  // t is adjacent to s
    fam.chain_next[n] = 0;

    std::vector<Edge> edges;
    for (int x = 1; x < n; ++x) edges.emplace_back(x, btl::parent(x));
    for (int x = 0; x < n; ++x) edges.emplace_back(x, n);

    // cluster dimensions, outermost level first
    std::vector<int> levels;
    for (int rest = k; rest > 0;) {
        int j = ((rest - 1) % 3) + 1;
        levels.push_back(j);
        rest -= j;
    }
    int shift = k;  // current skeleton: labels divisible by 2^shift
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        int j = *it;
        int stride = 1 << (shift - j);
        for (int w = 0; w < n; w += (1 << shift)) {
            for (int y = 1; y < (1 << j); ++y) {
                int x = w + y * stride;
                fam.label[x] = fam.label[w] + 1;
                fam.chain_next[x] = w;
                if ((y & (y - 1)) != 0) {  // not the parent edge: add shortcut
                    Edge sc(x, w);
                    fam.shortcuts.push_back(sc);
                    edges.push_back(sc);
                }
            }
        }
        shift -= j;
    }
    std::sort(fam.shortcuts.begin(), fam.shortcuts.end());

    fam.graph.graph = Graph(n + 1, std::move(edges));
    fam.graph.roles = {{Role::s, 0}, {Role::t, n}};
    for (int v = 0; v <= n; ++v) fam.graph.dist_label[v] = fam.label[v];
    fam.graph.shortcut_edges = fam.shortcuts;
    fam.tree = binomial_rooted_tree(k);

    if (n + 1 <= 1000) {
        auto pl = planarity_check(fam.graph.graph);
        if (pl.planar) fam.graph.rotation = pl.rotation;
    }
    return fam;
}

/// AB_k with the universal vertex removed (the object of the chain-relay
/// broadcast bound). Ids 0..2^k-1 are unchanged.
inline AbFamily accelerated_binomial_minus_t(int k) {
    AbFamily full = accelerated_binomial(k);
    int n = 1 << k;
    AbFamily fam;
    fam.k = k;
    fam.s = 0;
    fam.t = -1;
    fam.tree = full.tree;
    fam.shortcuts = full.shortcuts;
    fam.label.assign(full.label.begin(), full.label.begin() + n);
    fam.chain_next.assign(full.chain_next.begin(), full.chain_next.begin() + n);
    std::vector<Edge> edges;
    for (const Edge& e : full.graph.graph.edges())
        if (e.v != n) edges.push_back(e);
    fam.graph.graph = Graph(n, std::move(edges));
    fam.graph.roles = {{Role::s, 0}};
    for (int v = 0; v < n; ++v) fam.graph.dist_label[v] = fam.label[v];
    fam.graph.shortcut_edges = fam.shortcuts;
    return fam;
}

// ---------------------------------------------------------------------------
// Parallel composition and the composed families EB_k / PB_k
// ---------------------------------------------------------------------------

/// Parallel composition: disjoint union with the two s terminals merged and
/// the two t terminals merged; duplicate {s,t} edges collapse. g1 keeps its
/// ids; g2's non-terminal vertices are appended in ascending id order.
inline LabeledGraph compose_parallel(const LabeledGraph& g1, const LabeledGraph& g2) {
    int s1 = g1.require_role(Role::s), t1 = g1.require_role(Role::t);
    int s2 = g2.require_role(Role::s), t2 = g2.require_role(Role::t);
    int n1 = g1.graph.vertex_count();

    std::vector<int> map2(g2.graph.vertex_count(), -1);
    map2[s2] = s1;
    map2[t2] = t1;
    int next = n1;
    for (int v = 0; v < g2.graph.vertex_count(); ++v)
        if (map2[v] < 0) map2[v] = next++;

    Multigraph mg;
    mg.n = next;
    for (const Edge& e : g1.graph.edges()) mg.add_edge(e.u, e.v);
    for (const Edge& e : g2.graph.edges()) mg.add_edge(map2[e.u], map2[e.v]);

    LabeledGraph out;
    out.graph = simplify(mg);
    out.roles = {{Role::s, s1}, {Role::t, t1}};
    out.dist_label = g1.dist_label;
    for (const auto& [v, d] : g2.dist_label) out.dist_label.emplace(map2[v], d);
    out.shortcut_edges = g1.shortcut_edges;
    for (const Edge& e : g2.shortcut_edges)
        out.shortcut_edges.emplace_back(map2[e.u], map2[e.v]);
    return out;
}

/// View shared by the hub-based families (B_k, EB_k, PB_k): a universal
/// vertex t plus one or two binomial trees hanging from the shared root s.
struct ComposedView {
    char fam = 'b';  // 'b', 'e', 'p'
    int k = 0;
    int m = 0;       // dimension of the subtree the originator fills
    int t = -1, s = 0;
    struct Tree {
        int dim = 0;
        std::vector<int> id_of;       // label -> id, -1 when trimmed away
        std::vector<int> label_of;    // id -> label, -1 outside this tree
        std::vector<int> chain_next;  // id -> id (accelerated trees), else empty
    };
    std::vector<Tree> trees;
};

struct ComposedFamily {
    LabeledGraph graph;
    ComposedView view;
};

namespace detail {

// Removal order for leaf trimming: deepest first (tree depth), highest id
// breaking ties. Never touches roles s and t.
inline std::vector<int> trim_order(const LabeledGraph& g, const std::set<int>& zone) {
    int s = g.require_role(Role::s);
    // BFS inside the zone-induced subgraph, seeded from the vertices adjacent
    // to s; depth then equals tree depth for the composed families.
    std::vector<int> depth(g.graph.vertex_count(), -1);
    std::queue<int> q;
    for (int v : g.graph.neighbors(s))
        if (zone.count(v)) {
            depth[v] = 1;
            q.push(v);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.graph.neighbors(u))
            if (zone.count(w) && depth[w] < 0) {
                depth[w] = depth[u] + 1;
                q.push(w);
            }
    }
    std::vector<int> order(zone.begin(), zone.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = depth[a] < 0 ? std::numeric_limits<int>::max() : depth[a];
        int db = depth[b] < 0 ? std::numeric_limits<int>::max() : depth[b];
        if (da != db) return da > db;
        return a > b;
    });
    return order;
}

inline LabeledGraph remove_vertices(const LabeledGraph& g, const std::set<int>& removed,
                                    std::vector<int>* new_id_out = nullptr) {
    int n = g.graph.vertex_count();
    std::vector<int> new_id(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (!removed.count(v)) new_id[v] = next++;
    LabeledGraph out;
    std::vector<Edge> edges;
    for (const Edge& e : g.graph.edges())
        if (new_id[e.u] >= 0 && new_id[e.v] >= 0) edges.emplace_back(new_id[e.u], new_id[e.v]);
    out.graph = Graph(next, std::move(edges));
    for (const auto& [r, v] : g.roles)
        if (new_id[v] >= 0) out.roles[r] = new_id[v];
    for (const auto& [v, d] : g.dist_label)
        if (new_id[v] >= 0) out.dist_label[new_id[v]] = d;
    for (const Edge& e : g.shortcut_edges)
        if (new_id[e.u] >= 0 && new_id[e.v] >= 0)
            out.shortcut_edges.emplace_back(new_id[e.u], new_id[e.v]);
    if (new_id_out) *new_id_out = std::move(new_id);
    return out;
}

}  // namespace detail

/// Removes `count` vertices of the zone in reverse-BFS order (deepest first,
/// highest id breaking ties). Terminals s and t are never removed.
inline LabeledGraph trim_leaves(const LabeledGraph& g, int count, const std::set<int>& zone) {
    if (count < 0) throw contract_error("trim_leaves: negative count");
    std::set<int> z = zone;
    for (Role r : {Role::s, Role::t}) {
        auto v = g.role_vertex(r);
        if (v) z.erase(*v);
    }
    if (count > static_cast<int>(z.size()))
        throw contract_error("trim_leaves: count exceeds removable vertices in zone");
    auto order = detail::trim_order(g, z);
    std::set<int> removed(order.begin(), order.begin() + count);
    return detail::remove_vertices(g, removed);
}

namespace detail {

// Assembles B_k / EB_k / PB_k: one or two binomial trees sharing root s,
// every tree vertex adjacent to the hub t. Accelerated trees contribute their
// shortcut edges, labels and chains.
inline ComposedFamily build_hub_family(char fam, int k, int m,
                                       const std::vector<int>& tree_dims,
                                       const std::vector<const AbFamily*>& accel,
                                       std::optional<int> n_target) {
    // id layout: tree 0 labels map to ids directly, t follows, then the
    // second tree's non-root labels
    int n1 = 1 << tree_dims[0];
    int t_id = n1;
    int total = n1 + 1;
    ComposedFamily out;
    out.view.fam = fam;
    out.view.k = k;
    out.view.m = m;
    out.view.s = 0;
    out.view.t = t_id;

    Multigraph mg;
    for (size_t ti = 0; ti < tree_dims.size(); ++ti) {
        ComposedView::Tree tr;
        tr.dim = tree_dims[ti];
        int sz = 1 << tr.dim;
        tr.id_of.assign(sz, -1);
        for (int x = 0; x < sz; ++x) {
            if (ti == 0) tr.id_of[x] = x;
            else tr.id_of[x] = x == 0 ? 0 : n1 + x;
        }
        out.view.trees.push_back(std::move(tr));
        if (ti == 1) total = n1 + (1 << tree_dims[1]);
    }
    mg.n = total;

    std::vector<Edge> shortcut_edges;
    std::map<int, int> labels;
    for (size_t ti = 0; ti < out.view.trees.size(); ++ti) {
        auto& tr = out.view.trees[ti];
        int sz = 1 << tr.dim;
        for (int x = 1; x < sz; ++x) mg.add_edge(tr.id_of[x], tr.id_of[btl::parent(x)]);
        for (int x = 0; x < sz; ++x) mg.add_edge(tr.id_of[x], t_id);
        tr.chain_next.assign(total, -1);
        if (accel[ti]) {
            const AbFamily& ab = *accel[ti];
            for (const Edge& e : ab.shortcuts)
                mg.add_edge(tr.id_of[e.u], tr.id_of[e.v]);
            for (int x = 0; x < sz; ++x) {
                labels[tr.id_of[x]] = ab.label[x];
                if (ab.chain_next[x] >= 0)
                    tr.chain_next[tr.id_of[x]] = tr.id_of[ab.chain_next[x]];
            }
            for (const Edge& e : ab.shortcuts)
                shortcut_edges.emplace_back(tr.id_of[e.u], tr.id_of[e.v]);
        }
        tr.label_of.assign(total, -1);
        for (int x = 0; x < sz; ++x) tr.label_of[tr.id_of[x]] = x;
    }

    out.graph.graph = simplify(mg);
    out.graph.roles = {{Role::s, 0}, {Role::t, t_id}};
    if (!labels.empty()) {
        labels[t_id] = 1;
        out.graph.dist_label = labels;
    }
    std::sort(shortcut_edges.begin(), shortcut_edges.end());
    shortcut_edges.erase(std::unique(shortcut_edges.begin(), shortcut_edges.end()),
                         shortcut_edges.end());
    out.graph.shortcut_edges = shortcut_edges;

    if (n_target) {
        int count = total - *n_target;
        if (count < 0) throw contract_error("family: n exceeds the full vertex count");
        if (out.view.trees.size() < 2)
            throw contract_error("family: this family takes no n parameter");
        std::set<int> zone;
        int sz2 = 1 << out.view.trees[1].dim;
        for (int x = 1; x < sz2; ++x) zone.insert(out.view.trees[1].id_of[x]);
        if (count > static_cast<int>(zone.size()))
            throw contract_error("family: n below the valid range");
        auto order = detail::trim_order(out.graph, zone);
        std::set<int> removed(order.begin(), order.begin() + count);
        std::vector<int> new_id;
        out.graph = detail::remove_vertices(out.graph, removed, &new_id);
        for (auto& tr : out.view.trees) {
            for (auto& id : tr.id_of) id = id >= 0 ? new_id[id] : -1;
            std::vector<int> lo(out.graph.graph.vertex_count(), -1);
            std::vector<int> cn(out.graph.graph.vertex_count(), -1);
            for (int x = 0; x < static_cast<int>(tr.id_of.size()); ++x)
                if (tr.id_of[x] >= 0) lo[tr.id_of[x]] = x;
            for (int old = 0; old < static_cast<int>(tr.chain_next.size()); ++old) {
                int nxt = tr.chain_next[old];
                if (new_id[old] >= 0 && nxt >= 0 && new_id[nxt] >= 0)
                    cn[new_id[old]] = new_id[nxt];
            }
            tr.label_of = std::move(lo);
            tr.chain_next = std::move(cn);
        }
        out.view.t = new_id[t_id];
        out.view.s = new_id[0];
    }
    return out;
}

}  // namespace detail

/// EB_k = B_{k-1} composed in parallel with B_{floor(k/2)}. Optional n trims
/// leaves of the smaller tree.
inline ComposedFamily extended_binomial(int k, std::optional<int> n = std::nullopt) {
    if (k < 2) throw contract_error("extended_binomial: k must be >= 2");
    if (k > 16) throw capability_error("extended_binomial: k too large");
    int m = k / 2;
    int full = (1 << (k - 1)) + (1 << m);
    if (n && (*n < (1 << (k - 1)) + 1 || *n > full))
        throw contract_error("extended_binomial: n out of range");
    std::vector<const AbFamily*> accel = {nullptr, nullptr};
    return detail::build_hub_family('e', k, m, {k - 1, m}, accel, n);
}

/// PB_k = AB_{k-1} composed in parallel with AB_{floor(3k/4)-1}; planar.
inline ComposedFamily planar_broadcast(int k, std::optional<int> n = std::nullopt) {
    if (k < 2) throw contract_error("planar_broadcast: k must be >= 2");
    if (k > 16) throw capability_error("planar_broadcast: k too large");
    int m = (3 * k) / 4 - 1;
    int full = (1 << (k - 1)) + (1 << m);
    if (n && (*n < (1 << (k - 1)) + 1 || *n > full))
        throw contract_error("planar_broadcast: n out of range");
    AbFamily a1 = accelerated_binomial_minus_t(k - 1);
    AbFamily a2 = accelerated_binomial_minus_t(m);
    std::vector<const AbFamily*> accel = {&a1, &a2};
    ComposedFamily fam = detail::build_hub_family('p', k, m, {k - 1, m}, accel, n);
    auto pl = planarity_check(fam.graph.graph);
    if (pl.planar) fam.graph.rotation = pl.rotation;
    return fam;
}

/// B_k as a ComposedFamily (single tree); the originator fills its enclosing
/// BT_{floor(k/2)} while t covers the complement.
inline ComposedFamily binomial_sp_composed(int k) {
    if (k < 0) throw contract_error("binomial_sp: k must be >= 0");
    if (k > 16) throw capability_error("binomial_sp: k too large");
    std::vector<const AbFamily*> accel = {nullptr};
    return detail::build_hub_family('b', k, k / 2, {k}, accel, std::nullopt);
}

// ---------------------------------------------------------------------------
// Relaxed broadcast SP graph
// ---------------------------------------------------------------------------

struct RbFamily {
    LabeledGraph graph;
    int k = 0;
    int s = 1, t = 0;
    std::vector<int> id_of, label_of;  // canonical BT_k labels with holes
};

/// SP graph on any n >= 2 with broadcast time at most ceil(log n)+1: BT_k
/// rooted at t, chain edges between consecutive subroots (the smallest
/// designated s), surplus leaves deleted, and every vertex joined to t.
inline RbFamily relaxed_sp(int n) {
    if (n < 2) throw contract_error("relaxed_sp: n must be >= 2");
    if (n > (1 << 20)) throw capability_error("relaxed_sp: n too large");
    int k = ceil_log2(static_cast<std::uint64_t>(n));
    int full = 1 << k;
    std::vector<bool> keep(full, true);
    int to_delete = full - n;
    for (int x = full - 1; to_delete > 0; x -= 2) {
        keep[x] = false;  // odd labels are the leaves of BT_k
        --to_delete;
    }

    RbFamily fam;
    fam.k = k;
    fam.id_of.assign(full, -1);
    fam.label_of.assign(n, -1);
    int next = 0;
    for (int x = 0; x < full; ++x)
        if (keep[x]) {
            fam.id_of[x] = next;
            fam.label_of[next] = x;
            ++next;
        }

    Multigraph mg;
    mg.n = n;
    for (int x = 1; x < full; ++x)
        if (keep[x]) mg.add_edge(fam.id_of[x], fam.id_of[btl::parent(x)]);
    for (int i = 2; i <= k; ++i) {
        int a = 1 << (i - 1), b = 1 << (i - 2);  // subroot chain
        if (keep[a] && keep[b]) mg.add_edge(fam.id_of[a], fam.id_of[b]);
    }
    for (int x = 1; x < full; ++x)
        if (keep[x]) mg.add_edge(fam.id_of[x], fam.id_of[0]);

    fam.graph.graph = simplify(mg);
    fam.t = fam.id_of[0];
    fam.s = n >= 2 ? fam.id_of[1] : fam.t;
    fam.graph.roles = {{Role::s, fam.s}, {Role::t, fam.t}};
    return fam;
}

// ---------------------------------------------------------------------------
// Random series-parallel graphs grown from K_3
// ---------------------------------------------------------------------------

struct K3Op {
    char kind = 's';  // 's' series, 'p' parallel
    Edge target;
    int new_vertex = -1;
};

struct K3Family {
    LabeledGraph graph;
    std::uint64_t seed = 0;
    int steps = 0;
    std::vector<K3Op> log;
};

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // unbiased enough for test-grade sampling, and platform independent
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }
};

}  // namespace detail

/// Grows a multigraph from K_3 by `steps` uniformly random series/parallel
/// extensions (series and parallel each with probability 1/2, target edge
/// uniform over the multiset), then simplifies. Deterministic per seed; the
/// construction log is retained.
inline K3Family k3_random_sp(int steps, std::uint64_t seed) {
    if (steps < 0) throw contract_error("k3_random_sp: steps must be >= 0");
    detail::SplitMix64 rng(seed);
    Multigraph mg;
    mg.n = 3;
    mg.add_edge(0, 1);
    mg.add_edge(0, 2);
    mg.add_edge(1, 2);

    K3Family fam;
    fam.seed = seed;
    fam.steps = steps;
    for (int i = 0; i < steps; ++i) {
        bool series = (rng.next() & 1) == 0;
        std::uint64_t e = rng.below(mg.edges.size());
        Edge target = mg.edges[e];
        K3Op op;
        op.target = target;
        if (series) {
            op.kind = 's';
            op.new_vertex = mg.n;
            mg.edges.erase(mg.edges.begin() + static_cast<long>(e));
            mg.n += 1;
            mg.add_edge(target.u, op.new_vertex);
            mg.add_edge(op.new_vertex, target.v);
        } else {
            op.kind = 'p';
            mg.add_edge(target.u, target.v);
        }
        fam.log.push_back(op);
    }
    fam.graph.graph = simplify(mg);
    fam.graph.roles = {{Role::s, 0}, {Role::t, 1}};
    return fam;
}

// ---------------------------------------------------------------------------
// FamilySpec dispatch and recognizers
// ---------------------------------------------------------------------------

struct FamilySpec {
    std::string family;  // bt | mb | b | eb | rb | ab | pb | k3sp
    int k = -1;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
};

/// Builds the requested family instance. For k3sp the k field carries the
/// step count.
inline LabeledGraph build_family(const FamilySpec& spec) {
    const std::string& f = spec.family;
    if (f == "rb") {
        if (!spec.n) throw contract_error("family rb: requires --n");
        return relaxed_sp(*spec.n).graph;
    }
    if (spec.k < 0) throw contract_error("family " + f + ": requires --k");
    if (f == "bt") return binomial_tree(spec.k).graph;
    if (f == "mb") return mirrored_binomial(spec.k).graph;
    if (f == "b") return binomial_sp_composed(spec.k).graph;
    if (f == "eb") return extended_binomial(spec.k, spec.n).graph;
    if (f == "ab") return accelerated_binomial(spec.k).graph;
    if (f == "pb") return planar_broadcast(spec.k, spec.n).graph;
    if (f == "k3sp") return k3_random_sp(spec.k, spec.seed.value_or(0)).graph;
    throw contract_error("unknown family '" + f + "'");
}

namespace detail {

inline bool same_graph(const LabeledGraph& a, const LabeledGraph& b) {
    return a.graph.vertex_count() == b.graph.vertex_count() &&
           a.graph.edges() == b.graph.edges() && a.roles == b.roles;
}

}  // namespace detail

/// Exact structural recognizers: rebuild the canonical instance implied by
/// the vertex count and compare edge sets. Relabeled isomorphs are rejected
/// on purpose; schedules are defined on the canonical construction.
inline std::optional<MbFamily> recognize_mb(const LabeledGraph& g) {
    std::uint64_t n = static_cast<std::uint64_t>(g.graph.vertex_count());
    if (n < 4 || !is_power_of_two(n)) return std::nullopt;
    int k = ceil_log2(n);
    if (k < 2 || k > 20) return std::nullopt;
    MbFamily f = mirrored_binomial(k);
    if (!detail::same_graph(f.graph, g)) return std::nullopt;
    return f;
}

inline std::optional<ComposedFamily> recognize_composed(const LabeledGraph& g) {
    int n = g.graph.vertex_count();
    if (n >= 2 && is_power_of_two(static_cast<std::uint64_t>(n - 1))) {
        int k = ceil_log2(static_cast<std::uint64_t>(n - 1));
        if (k <= 16) {
            ComposedFamily f = binomial_sp_composed(k);
            if (detail::same_graph(f.graph, g)) return f;
        }
    }
    if (n >= 3) {
        int k = ceil_log2(static_cast<std::uint64_t>(n));
        if (k >= 2 && k <= 16) {
            if (n >= (1 << (k - 1)) + 1 && n <= (1 << (k - 1)) + (1 << (k / 2))) {
                ComposedFamily f = extended_binomial(k, n);
                if (detail::same_graph(f.graph, g)) return f;
            }
            int m = (3 * k) / 4 - 1;
            if (m >= 0 && n >= (1 << (k - 1)) + 1 && n <= (1 << (k - 1)) + (1 << m)) {
                ComposedFamily f = planar_broadcast(k, n);
                if (detail::same_graph(f.graph, g)) return f;
            }
        }
    }
    return std::nullopt;
}

inline std::optional<RbFamily> recognize_rb(const LabeledGraph& g) {
    int n = g.graph.vertex_count();
    if (n < 2 || n > (1 << 20)) return std::nullopt;
    RbFamily f = relaxed_sp(n);
    if (!detail::same_graph(f.graph, g)) return std::nullopt;
    return f;
}

inline std::optional<BinomialTreeFamily> recognize_bt(const LabeledGraph& g) {
    std::uint64_t n = static_cast<std::uint64_t>(g.graph.vertex_count());
    if (n < 1 || !is_power_of_two(n)) return std::nullopt;
    int k = ceil_log2(n);
    if (k > 20) return std::nullopt;
    BinomialTreeFamily f = binomial_tree(k);
    if (!detail::same_graph(f.graph, g)) return std::nullopt;
    return f;
}

inline std::optional<AbFamily> recognize_ab(const LabeledGraph& g, bool minus_t) {
    std::uint64_t n = static_cast<std::uint64_t>(g.graph.vertex_count());
    std::uint64_t tree_n = minus_t ? n : n - 1;
    if (n < 1 || !is_power_of_two(tree_n)) return std::nullopt;
    int k = ceil_log2(tree_n);
    if (k > 16) return std::nullopt;
    AbFamily f = minus_t ? accelerated_binomial_minus_t(k) : accelerated_binomial(k);
    if (f.graph.graph.vertex_count() != g.graph.vertex_count() ||
        f.graph.graph.edges() != g.graph.edges())
        return std::nullopt;
    return f;
}

}  // namespace bcast
