#pragma once

#include "bcast/families.hpp"
#include "bcast/schedule.hpp"

namespace bcast {

namespace detail {

// Deterministic round simulation: every informed vertex holds an ordered
// callee agenda and each round calls its first entry that is still
// uninformed and unclaimed. Entries that are informed (or claimed earlier in
// the same round) are skipped for good. Vertices are processed in id order.
class AgendaSim {
public:
    AgendaSim(int n, int origin) : n_(n), origin_(origin), agenda_(n), cursor_(n, 0) {}

    void push(int vertex, int callee) { agenda_[vertex].push_back(callee); }
    void push_front(int vertex, int callee) {
        agenda_[vertex].insert(agenda_[vertex].begin(), callee);
    }

    Schedule run() {
        Schedule sched;
        sched.origin = origin_;
        std::vector<bool> informed(n_, false);
        informed[origin_] = true;
        int informed_count = 1;
        while (informed_count < n_) {
            std::vector<Call> calls;
            std::vector<bool> claimed(n_, false);
            for (int v = 0; v < n_; ++v) {
                if (!informed[v]) continue;
                auto& ag = agenda_[v];
                size_t& cur = cursor_[v];
                while (cur < ag.size() && (informed[ag[cur]] || claimed[ag[cur]])) ++cur;
                if (cur < ag.size()) {
                    claimed[ag[cur]] = true;
                    calls.push_back({v, ag[cur]});
                    ++cur;
                }
            }
            if (calls.empty()) throw std::logic_error("scheme stalled before completion");
            informed_count += static_cast<int>(calls.size());
            for (const Call& c : calls) informed[c.callee] = true;
            sched.rounds.push_back(std::move(calls));
        }
        return sched;
    }

private:
    int n_;
    int origin_;
    std::vector<std::vector<int>> agenda_;
    std::vector<size_t> cursor_;
};

// Label-space view of a binomial subtree: base labels [base, base+2^dim),
// optionally re-rooted at the second root base + 2^{dim-1}.
struct SubtreeRoot {
    int base = 0;
    int dim = 0;
    bool rerooted = false;

    int conj(int y) const { return rerooted ? y ^ (1 << (dim - 1)) : y; }
    int root_label() const { return base + conj(0); }
    bool contains(int label) const { return label >= base && label < base + (1 << dim); }
    int depth(int label) const { return btl::tree_depth(conj(label - base)); }
    int parent_label(int label) const {
        int y = conj(label - base);
        if (y == 0) return -1;
        return base + conj(btl::parent(y));
    }
    // children in decreasing subtree dimension
    std::vector<int> children_labels(int label) const {
        int y = conj(label - base);
        std::vector<int> out;
        for (int i = btl::dim_of(y, dim) - 1; i >= 0; --i) out.push_back(base + conj(y + (1 << i)));
        return out;
    }
};

}  // namespace detail

/// Binomial-subtree roots partitioning the tree minus the dimension-d subtree
/// containing v, in strictly decreasing dimension order.
inline std::vector<std::pair<int, int>> complement_decomposition(const RootedTree& tree, int v,
                                                                 int d) {
    int k = tree.dim();
    if (v < 0 || v >= tree.size()) throw contract_error("complement_decomposition: v not in tree");
    if (d < 0 || d > k) throw contract_error("complement_decomposition: d out of range");
    std::vector<std::pair<int, int>> out;
    for (int b = k - 1; b >= d; --b) {
        int prefix = (v >> (b + 1)) << (b + 1);
        int root = prefix | (((~(v >> b)) & 1) << b);
        out.emplace_back(root, b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scheme 1: binomial-tree broadcast
// ---------------------------------------------------------------------------

/// The originator relays toward the closest root (the canonical one on ties);
/// from the round after the root is informed, every informed vertex calls its
/// largest uninformed child subroot. Exactly k rounds from a root, at most
/// 2k-1 from anywhere.
inline Schedule scheme_binomial(const RootedTree& tree, int origin) {
    int k = tree.dim();
    int n = tree.size();
    if (origin < 0 || origin >= n) throw contract_error("scheme_binomial: origin not in tree");
    detail::AgendaSim sim(n, origin);
    if (n == 1) return sim.run();

    int second = 1 << (k - 1);
    int d0 = btl::tree_depth(origin);
    int d1 = btl::tree_depth(origin ^ second);
    detail::SubtreeRoot rooting{0, k, d1 < d0};

    // relay along the ancestor chain toward the chosen root; the relay entry
    // lands ahead of each path vertex's own children
    int cur = origin;
    while (true) {
        int p = rooting.parent_label(cur);
        if (p < 0) break;
        sim.push(cur, p);
        cur = p;
    }
    for (int x = 0; x < n; ++x)
        for (int c : rooting.children_labels(x)) sim.push(x, c);
    return sim.run();
}

// ---------------------------------------------------------------------------
// Greedy fallback scheduler
// ---------------------------------------------------------------------------

namespace detail {

// One greedy round: BFS forest from the informed set (lowest-id parents),
// uninformed frontier vertices ranked by the size of the uninformed region
// hanging behind them, each assigned to its smallest free informed neighbor.
inline std::vector<Call> greedy_round(const Graph& g, const std::vector<bool>& informed) {
    int n = g.vertex_count();
    std::vector<int> depth(n, -1), order;
    std::queue<int> q;
    for (int v = 0; v < n; ++v)
        if (informed[v]) {
            depth[v] = 0;
            q.push(v);
        }
    std::vector<int> parent(n, -1);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        order.push_back(u);
        for (int w : g.neighbors(u))
            if (depth[w] < 0) {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                q.push(w);
            }
    }
    std::vector<int> region(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (!informed[v]) {
            region[v] += 1;
            if (parent[v] >= 0 && !informed[parent[v]]) region[parent[v]] += region[v];
        }
    }
    std::vector<int> frontier;
    for (int v = 0; v < n; ++v)
        if (!informed[v] && depth[v] == 1) frontier.push_back(v);
    std::sort(frontier.begin(), frontier.end(), [&](int a, int b) {
        if (region[a] != region[b]) return region[a] > region[b];
        return a < b;
    });
    std::vector<bool> busy(n, false);
    std::vector<Call> calls;
    for (int v : frontier) {
        for (int u : g.neighbors(v)) {
            if (informed[u] && !busy[u]) {
                busy[u] = true;
                calls.push_back({u, v});
                break;
            }
        }
    }
    std::sort(calls.begin(), calls.end(),
              [](const Call& a, const Call& b) { return a.caller < b.caller; });
    return calls;
}

inline std::vector<std::vector<Call>> greedy_rounds(const Graph& g, std::vector<bool> informed,
                                                    int informed_count) {
    std::vector<std::vector<Call>> rounds;
    int n = g.vertex_count();
    while (informed_count < n) {
        auto calls = greedy_round(g, informed);
        if (calls.empty()) throw contract_error("greedy_schedule: graph is disconnected");
        for (const Call& c : calls) informed[c.callee] = true;
        informed_count += static_cast<int>(calls.size());
        rounds.push_back(std::move(calls));
    }
    return rounds;
}

}  // namespace detail

/// Priority-greedy scheduler: valid on any connected graph, used as a
/// fallback upper bound.
inline Schedule greedy_schedule(const Graph& g, int origin) {
    if (origin < 0 || origin >= g.vertex_count())
        throw contract_error("greedy_schedule: origin out of range");
    std::vector<bool> informed(g.vertex_count(), false);
    informed[origin] = true;
    Schedule sched;
    sched.origin = origin;
    sched.rounds = detail::greedy_rounds(g, std::move(informed), 1);
    return sched;
}

// ---------------------------------------------------------------------------
// Scheme for the mirrored-binomial family
// ---------------------------------------------------------------------------

namespace detail {

// shortest path src -> dst picking the smallest-id predecessor-side neighbor
inline std::vector<int> lowest_id_path(const Graph& g, int src, int dst) {
    auto dist = bfs_raw(g, dst);
    std::vector<int> path{src};
    int cur = src;
    while (cur != dst) {
        for (int w : g.neighbors(cur)) {
            if (dist[w] == dist[cur] - 1) {
                path.push_back(w);
                cur = w;
                break;
            }
        }
    }
    return path;
}

inline Schedule map_schedule(const Schedule& in, const std::vector<int>& perm_inv) {
    Schedule out;
    out.origin = perm_inv[in.origin];
    for (const auto& r : in.rounds) {
        std::vector<Call> calls;
        for (const Call& c : r) calls.push_back({perm_inv[c.caller], perm_inv[c.callee]});
        out.rounds.push_back(std::move(calls));
    }
    return out;
}

// Scheme for a terminal originator: fill the originator's own spanning tree,
// cross the leaf matching, then the opposite leaves call their tree parents.
inline Schedule scheme_mb_terminal(const MbFamily& f, int origin) {
    int n = f.graph.graph.vertex_count();
    AgendaSim sim(n, origin);
    bool upper = origin == f.s || origin == f.s_prime;
    const std::vector<int>& own_id = upper ? f.u_id : f.d_id;
    const std::vector<int>& opp_id = upper ? f.d_id : f.u_id;
    const std::vector<int>& opp_label = upper ? f.d_label : f.u_label;
    bool second = origin == f.s_prime || origin == f.t_prime;

    SubtreeRoot own{0, f.k - 1, second};
    for (int x = 0; x < (1 << (f.k - 1)); ++x)
        for (int c : own.children_labels(x)) sim.push(own_id[x], own_id[c]);
    // leaves are the odd labels in either rooting (k >= 3)
    for (int x = 1; x < (1 << (f.k - 1)); x += 2) sim.push(own_id[x], f.partner[own_id[x]]);
    for (int v = 0; v < n; ++v) {
        int x = opp_label[v];
        if (x >= 0 && (x & 1)) sim.push(v, opp_id[btl::parent(x)]);
    }
    return sim.run();
}

// General originator, normalized so that it lies in the copy holding s and
// t' with dist(s,u) >= dist(u,t'). Writes j from dist(s,u) = ceil(k/2)+j.
inline Schedule scheme_mb_general(const MbFamily& f, int origin) {
    const Graph& g = f.graph.graph;
    int n = g.vertex_count();
    int k = f.k;
    int ds = bfs_raw(g, f.s)[origin];
    int j = ds - (k + 1) / 2;

    AgendaSim sim(n, origin);
    auto path_s = lowest_id_path(g, origin, f.s);
    auto path_t = lowest_id_path(g, origin, f.t_prime);
    sim.push(origin, path_s[1]);
    sim.push(origin, path_t[1]);
    for (size_t i = 1; i + 1 < path_s.size(); ++i) sim.push(path_s[i], path_s[i + 1]);
    for (size_t i = 1; i + 1 < path_t.size(); ++i) sim.push(path_t[i], path_t[i + 1]);

    int half = 1 << (k - 1);
    SubtreeRoot u_root{0, k - 1, false};   // U rooted at s; first child is s'
    SubtreeRoot d_root{0, k - 1, true};    // D rooted at t'; first child is t

    // D side runs Scheme 1 from t' for every j.
    for (int x = 0; x < half; ++x)
        for (int c : d_root.children_labels(x)) sim.push(f.d_id[x], f.d_id[c]);

    if (j <= 0) {
        for (int x = 0; x < half; ++x)
            for (int c : u_root.children_labels(x)) sim.push(f.u_id[x], f.u_id[c]);
    } else if (j == 1) {
        // U leaves arrive by the leaf matching instead of their tree parents
        for (int x = 0; x < half; ++x)
            for (int c : u_root.children_labels(x))
                if ((c & 1) == 0) sim.push(f.u_id[x], f.u_id[c]);
        for (int x = 1; x < half; x += 2) sim.push(f.d_id[x], f.partner[f.d_id[x]]);
    } else {
        // t' finishes early enough to flood the whole upper tree: its leaves
        // cross the matching and the informed leaves lift to their parents
        sim.push(f.s, f.s_prime);
        for (int x = 1; x < half; x += 2) {
            sim.push(f.d_id[x], f.partner[f.d_id[x]]);
            sim.push(f.u_id[x], f.u_id[btl::parent(x)]);
        }
    }
    return sim.run();
}

}  // namespace detail

/// Broadcast scheme for MB_k from any originator; completes within
/// floor(3k/2) rounds (k+1 from a terminal).
inline Schedule scheme_mb(const MbFamily& f, int origin) {
    int n = f.graph.graph.vertex_count();
    if (origin < 0 || origin >= n) throw contract_error("scheme_mb: origin out of range");
    if (f.k == 2) {
        Schedule s;
        s.origin = origin;
        auto rounds = [&](std::vector<Call> a) {
            for (const Call& c : a) s.rounds.push_back({c});
        };
        if (origin == 0) rounds({{0, 1}, {1, 2}, {2, 3}});
        else if (origin == 1) rounds({{1, 0}, {1, 2}, {2, 3}});
        else if (origin == 2) rounds({{2, 3}, {2, 1}, {1, 0}});
        else rounds({{3, 2}, {2, 1}, {1, 0}});
        return s;
    }
    if (origin == f.s || origin == f.s_prime || origin == f.t || origin == f.t_prime)
        return detail::scheme_mb_terminal(f, origin);

    // normalize into the copy of s and t' with dist(s,u) >= dist(u,t')
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    int pos = origin;
    int half = n / 2;
    if (pos >= half) {
        perm = f.swap_perm;
        pos = perm[origin];
    }
    auto ds = detail::bfs_raw(f.graph.graph, f.s);
    auto dt = detail::bfs_raw(f.graph.graph, f.t_prime);
    if (ds[pos] < dt[pos]) {
        std::vector<int> composed(n);
        for (int i = 0; i < n; ++i) composed[i] = f.flip_perm[perm[i]];
        perm = std::move(composed);
        pos = f.flip_perm[pos];
    }
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    Schedule canonical = detail::scheme_mb_general(f, pos);
    return detail::map_schedule(canonical, inv);
}

inline Schedule scheme_mb(const LabeledGraph& g, int origin) {
    auto fam = recognize_mb(g);
    if (!fam) throw contract_error("scheme_mb: graph is not a mirrored-binomial instance");
    return scheme_mb(*fam, origin);
}

// ---------------------------------------------------------------------------
// Scheme for the hub families B_k / EB_k / PB_k and the relaxed SP graph
// ---------------------------------------------------------------------------

namespace detail {

// scheme-1 agendas for every existing vertex of a (possibly trimmed) tree,
// children restricted to the region rooted where the vertex lives
inline void push_tree_agendas(AgendaSim& sim, const ComposedView::Tree& tr,
                              const SubtreeRoot& region) {
    int sz = 1 << region.dim;
    for (int off = 0; off < sz; ++off) {
        int x = region.base + off;
        int id = tr.id_of[x];
        if (id < 0) continue;
        for (int c : region.children_labels(x))
            if (tr.id_of[c] >= 0) sim.push(id, tr.id_of[c]);
    }
}

inline Schedule scheme_composed_hub(const ComposedFamily& fam, int origin) {
    const ComposedView& view = fam.view;
    const Graph& g = fam.graph.graph;
    int n = g.vertex_count();
    AgendaSim sim(n, origin);

    int v = origin;
    if (origin == view.t) {
        v = view.s;
        sim.push(view.t, view.s);
    } else {
        sim.push(origin, view.t);
    }

    // home tree of v: the smaller tree for the shared root, else wherever its
    // label lives
    int home = 0;
    if (v == view.s) {
        home = static_cast<int>(view.trees.size()) - 1;
    } else {
        while (view.trees[home].label_of[v] < 0) ++home;
    }
    const auto& htr = view.trees[home];
    int x = htr.label_of[v];
    int m = std::min(view.m, htr.dim);
    int base = btl::enclosing_root(x, m);

    // relay inside the enclosing subtree toward a root, then scheme 1 there
    SubtreeRoot region{base, m, false};
    if (!htr.chain_next.empty() && view.fam == 'p') {
        // decreasing-label chain restricted to the subtree, tree parents as
        // fallback
        int cur = v;
        while (htr.label_of[cur] != base) {
            int nxt = htr.chain_next[cur];
            if (nxt < 0 || htr.label_of[nxt] < 0 || !region.contains(htr.label_of[nxt]))
                nxt = htr.id_of[btl::parent(htr.label_of[cur])];
            sim.push(cur, nxt);
            cur = nxt;
        }
    } else if (m >= 1) {
        int second = base + (1 << (m - 1));
        bool use_second =
            htr.id_of[second] >= 0 && SubtreeRoot{base, m, true}.depth(x) < region.depth(x);
        if (use_second) region.rerooted = true;
        int cur = x;
        while (cur != region.root_label()) {
            int p = region.parent_label(cur);
            sim.push(htr.id_of[cur], htr.id_of[p]);
            cur = p;
        }
    }
    push_tree_agendas(sim, htr, region);

    // complement pieces: the home-tree complement of the enclosing subtree,
    // then the other tree's subroot subtrees, all in decreasing dimension
    std::vector<std::pair<int, int>> pieces;  // (tree index, base label)
    std::vector<int> dims;
    for (int b = htr.dim - 1; b >= m; --b) {
        int prefix = (x >> (b + 1)) << (b + 1);
        pieces.emplace_back(home, prefix | (((~(x >> b)) & 1) << b));
        dims.push_back(b);
    }
    for (int ti = 0; ti < static_cast<int>(view.trees.size()); ++ti) {
        if (ti == home) continue;
        for (int b = view.trees[ti].dim - 1; b >= 0; --b) {
            pieces.emplace_back(ti, 1 << b);
            dims.push_back(b);
        }
    }
    // keep strictly decreasing dimensions (stable for equal dims)
    std::vector<size_t> order(pieces.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return dims[a] > dims[b]; });
    for (size_t oi : order) {
        auto [ti, root] = pieces[oi];
        const auto& tr = view.trees[ti];
        if (tr.id_of[root] < 0) continue;  // fully trimmed piece
        sim.push(view.t, tr.id_of[root]);
        push_tree_agendas(sim, tr, SubtreeRoot{root, dims[oi], false});
    }
    return sim.run();
}

inline Schedule scheme_rb(const RbFamily& fam, int origin) {
    const Graph& g = fam.graph.graph;
    int n = g.vertex_count();
    AgendaSim sim(n, origin);
    if (origin != fam.t) sim.push(origin, fam.t);
    int full = 1 << fam.k;
    for (int x = 0; x < full; ++x) {
        if (fam.id_of[x] < 0) continue;
        for (int i = btl::dim_of(x, fam.k) - 1; i >= 0; --i) {
            int c = x + (1 << i);
            if (fam.id_of[c] >= 0) sim.push(fam.id_of[x], fam.id_of[c]);
        }
    }
    return sim.run();
}

}  // namespace detail

/// Hub-family broadcast: the originator hands the message to t, fills its own
/// enclosing subtree, and t feeds the complement decomposition roots in
/// decreasing dimension, each running the binomial scheme. Completes within
/// ceil(log n) rounds (k+1 for B_k). Also covers the relaxed SP graph, where
/// the whole tree hangs from t.
inline Schedule scheme_composed(const ComposedFamily& fam, int origin) {
    if (origin < 0 || origin >= fam.graph.graph.vertex_count())
        throw contract_error("scheme_composed: origin out of range");
    return detail::scheme_composed_hub(fam, origin);
}

inline Schedule scheme_composed(const RbFamily& fam, int origin) {
    if (origin < 0 || origin >= fam.graph.graph.vertex_count())
        throw contract_error("scheme_composed: origin out of range");
    return detail::scheme_rb(fam, origin);
}

inline Schedule scheme_composed(const LabeledGraph& g, int origin) {
    if (auto fam = recognize_composed(g)) return scheme_composed(*fam, origin);
    if (auto fam = recognize_rb(g)) return scheme_composed(*fam, origin);
    throw contract_error("scheme_composed: graph is not a B/EB/PB/relaxed-SP instance");
}

// ---------------------------------------------------------------------------
// Scheme for AB_k minus its universal vertex
// ---------------------------------------------------------------------------

/// Relays along the decreasing-label chain to s (at most ceil(k/3) rounds),
/// then the binomial scheme from s; at most ceil(4k/3) rounds total.
inline Schedule scheme_ab(const AbFamily& fam, int origin) {
    if (fam.t >= 0) throw contract_error("scheme_ab: expects the t-removed accelerated graph");
    const Graph& g = fam.graph.graph;
    int n = g.vertex_count();
    if (origin < 0 || origin >= n) throw contract_error("scheme_ab: origin out of range");
    detail::AgendaSim sim(n, origin);
    int cur = origin;
    while (cur != fam.s) {
        int nxt = fam.chain_next[cur];
        sim.push(cur, nxt);
        cur = nxt;
    }
    for (int x = 0; x < n; ++x)
        for (int i = btl::dim_of(x, fam.k) - 1; i >= 0; --i) sim.push(x, x + (1 << i));
    return sim.run();
}

inline Schedule scheme_ab(const LabeledGraph& g, int origin) {
    if (g.dist_label.size() != static_cast<size_t>(g.graph.vertex_count()))
        throw contract_error("scheme_ab: dist_label missing");
    auto fam = recognize_ab(g, /*minus_t=*/true);
    if (!fam) throw contract_error("scheme_ab: graph is not an accelerated-binomial minus t");
    return scheme_ab(*fam, origin);
}

inline Schedule scheme_binomial(const LabeledGraph& g, int origin) {
    auto fam = recognize_bt(g);
    if (!fam) throw contract_error("scheme_binomial: graph is not a binomial tree");
    return scheme_binomial(fam->tree, origin);
}

}  // namespace bcast
