#pragma once

#include <map>

#include "bcast/graph.hpp"

namespace bcast {

struct SpResult {
    bool sp = false;
    // irreducible kernel in original vertex ids; empty when sp
    std::vector<int> kernel_vertices;
    std::vector<Edge> kernel_edges;  // with multiplicities collapsed
};

/// Two-terminal series-parallel recognition by reduction on the multigraph
/// closure: collapse parallel edge pairs, then smooth degree-2 non-terminal
/// vertices, repeating to a fixpoint. The graph is SP with terminals (s,t)
/// iff the residue is the single edge {s,t}; otherwise the irreducible kernel
/// is returned as the witness (it contains a K_4 minor).
inline SpResult is_sp(const Graph& g, int s, int t) {
    int n = g.vertex_count();
    if (s == t) throw contract_error("is_sp: terminals must be distinct");
    if (s < 0 || t < 0 || s >= n || t >= n) throw contract_error("is_sp: terminal out of range");

    // edge multiset
    std::map<Edge, int> mult;
    for (const Edge& e : g.edges()) mult[e] += 1;
    std::vector<bool> alive(n, true);
    auto degree_of = [&](int v) {
        int d = 0;
        for (const auto& [e, m] : mult)
            if (e.u == v || e.v == v) d += m;
        return d;
    };
    auto incident = [&](int v) {
        std::vector<std::pair<Edge, int>> out;
        for (const auto& [e, m] : mult)
            if (e.u == v || e.v == v) out.emplace_back(e, m);
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        // exhaust parallel collapses
        for (auto& [e, m] : mult)
            if (m > 1) {
                m = 1;
                changed = true;
            }
        // smooth degree-2 non-terminal vertices, lowest id first
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || v == s || v == t) continue;
            if (degree_of(v) != 2) continue;
            auto inc = incident(v);
            int a, b;
            if (inc.size() == 2) {
                a = inc[0].first.u == v ? inc[0].first.v : inc[0].first.u;
                b = inc[1].first.u == v ? inc[1].first.v : inc[1].first.u;
            } else {
                continue;  // double edge to one neighbor; wait for the collapse
            }
            for (const auto& [e, m] : inc) mult.erase(e);
            alive[v] = false;
            mult[Edge(a, b)] += 1;
            changed = true;
        }
    }

    SpResult res;
    int alive_count = 0;
    for (int v = 0; v < n; ++v)
        if (alive[v]) ++alive_count;
    if (alive_count == 2 && alive[s] && alive[t] && mult.size() == 1 &&
        mult.begin()->first == Edge(s, t)) {
        res.sp = true;
        return res;
    }
    for (int v = 0; v < n; ++v)
        if (alive[v]) res.kernel_vertices.push_back(v);
    for (const auto& [e, m] : mult) res.kernel_edges.push_back(e);
    return res;
}

/// Tries every candidate terminal pair of the original K_3 (the pairs
/// recorded in a k3 construction log); accepts if any pair reduces.
inline bool is_sp_any_k3_pair(const Graph& g) {
    const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto [a, b] : pairs) {
        if (a >= g.vertex_count() || b >= g.vertex_count()) continue;
        if (is_sp(g, a, b).sp) return true;
    }
    return false;
}

}  // namespace bcast
