#pragma once

#include "bcast/planarity.hpp"
#include "bcast/schemes.hpp"
#include "bcast/solver.hpp"
#include "bcast/sp.hpp"

namespace bcast {

/// One machine-checked claim: pass/fail plus a witness string (violating
/// call, kernel size, offending value) when it fails.
struct VerificationReport {
    std::string claim;
    std::string params;
    bool pass = false;
    std::string witness;
};

namespace detail {

inline void report(std::vector<VerificationReport>& out, const std::string& claim,
                   const std::string& params, bool pass, const std::string& witness = "") {
    out.push_back({claim, params, pass, witness});
}

}  // namespace detail

/// A built family instance together with its structural handles.
struct FamilyInstance {
    FamilySpec spec;
    LabeledGraph graph;
    std::optional<BinomialTreeFamily> bt;
    std::optional<MbFamily> mb;
    std::optional<ComposedFamily> composed;  // b / eb / pb
    std::optional<RbFamily> rb;
    std::optional<AbFamily> ab_minus;        // AB_k minus t (scheme surface)
    std::optional<K3Family> k3;
};

inline FamilyInstance instantiate(const FamilySpec& spec) {
    FamilyInstance inst;
    inst.spec = spec;
    const std::string& f = spec.family;
    if (f == "bt") {
        inst.bt = binomial_tree(spec.k);
        inst.graph = inst.bt->graph;
    } else if (f == "mb") {
        inst.mb = mirrored_binomial(spec.k);
        inst.graph = inst.mb->graph;
    } else if (f == "b") {
        inst.composed = binomial_sp_composed(spec.k);
        inst.graph = inst.composed->graph;
    } else if (f == "eb") {
        inst.composed = extended_binomial(spec.k, spec.n);
        inst.graph = inst.composed->graph;
    } else if (f == "pb") {
        inst.composed = planar_broadcast(spec.k, spec.n);
        inst.graph = inst.composed->graph;
    } else if (f == "rb") {
        if (!spec.n) throw contract_error("family rb: requires n");
        inst.rb = relaxed_sp(*spec.n);
        inst.graph = inst.rb->graph;
    } else if (f == "ab") {
        AbFamily full = accelerated_binomial(spec.k);
        inst.graph = full.graph;
        inst.ab_minus = accelerated_binomial_minus_t(spec.k);
    } else if (f == "k3sp") {
        inst.k3 = k3_random_sp(spec.k, spec.seed.value_or(0));
        inst.graph = inst.k3->graph;
    } else {
        throw contract_error("unknown family '" + f + "'");
    }
    return inst;
}

/// Claimed broadcast bound for a family instance (the object of the scheme
/// and exact checks; for ab this refers to AB_k minus t).
inline int claimed_bound(const FamilyInstance& inst) {
    int k = inst.spec.k;
    const std::string& f = inst.spec.family;
    if (f == "bt") return std::max(0, 2 * k - 1);
    if (f == "mb") return (3 * k) / 2;
    if (f == "b") return k + 1;
    if (f == "eb" || f == "pb") return k;
    if (f == "rb") return ceil_log2(static_cast<std::uint64_t>(inst.graph.graph.vertex_count())) + 1;
    if (f == "ab") return (4 * k + 2) / 3;  // ceil(4k/3)
    if (f == "k3sp") return (inst.graph.graph.vertex_count() + 1) / 2;
    throw contract_error("claimed_bound: unknown family");
}

/// Builds the family's own scheme from the given origin. For ab the origin
/// refers to AB_k minus t.
inline Schedule family_scheme(const FamilyInstance& inst, int origin) {
    const std::string& f = inst.spec.family;
    if (f == "bt") return scheme_binomial(inst.bt->tree, origin);
    if (f == "mb") return scheme_mb(*inst.mb, origin);
    if (f == "b" || f == "eb" || f == "pb") return scheme_composed(*inst.composed, origin);
    if (f == "rb") return scheme_composed(*inst.rb, origin);
    if (f == "ab") return scheme_ab(*inst.ab_minus, origin);
    if (f == "k3sp") return greedy_schedule(inst.graph.graph, origin);
    throw contract_error("family_scheme: unknown family");
}

/// The graph the broadcast claims quantify over (ab: the t-removed graph).
inline const Graph& claim_graph(const FamilyInstance& inst) {
    if (inst.spec.family == "ab") return inst.ab_minus->graph.graph;
    return inst.graph.graph;
}

/// Worst completion of the family scheme over every origin; every emitted
/// schedule is validated. Returns (rounds, origin attaining it); throws on a
/// validation failure.
inline std::pair<int, int> scheme_worst(const FamilyInstance& inst) {
    const Graph& g = claim_graph(inst);
    int worst = 0, worst_origin = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        Schedule sched = family_scheme(inst, v);
        auto val = validate_schedule(g, sched);
        if (!val.ok)
            throw std::logic_error("family scheme failed validation from origin " +
                                   std::to_string(v) + ": " + val.violation->describe());
        if (val.completion_round > worst) {
            worst = val.completion_round;
            worst_origin = v;
        }
    }
    return {worst, worst_origin};
}

namespace detail {

inline std::string spec_params(const FamilySpec& spec, const LabeledGraph& g) {
    std::string p = "family=" + spec.family;
    if (spec.family == "rb")
        p += " n=" + std::to_string(g.graph.vertex_count());
    else
        p += " k=" + std::to_string(spec.k);
    if (spec.n) p += " n=" + std::to_string(*spec.n);
    if (spec.seed) p += " seed=" + std::to_string(*spec.seed);
    return p;
}

inline void check_counts_degrees(const FamilyInstance& inst, const std::string& params,
                                 std::vector<VerificationReport>& out) {
    const std::string& f = inst.spec.family;
    const Graph& g = inst.graph.graph;
    int k = inst.spec.k;
    int n = g.vertex_count();
    if (f == "bt") {
        report(out, "bt.count", params, n == (1 << k), "n=" + std::to_string(n));
        report(out, "bt.edges", params, g.edge_count() == n - 1,
               "m=" + std::to_string(g.edge_count()));
        report(out, "bt.root_degree", params, g.degree(0) == k,
               "deg=" + std::to_string(g.degree(0)));
    } else if (f == "mb") {
        report(out, "mb.count", params, n == (1 << k), "n=" + std::to_string(n));
        // the k-1 degree formula starts at k=3; MB_2 is the 4-path
        int want = k == 2 ? 2 : k - 1;
        report(out, "mb.max_degree", params, g.max_degree() == want,
               "max_degree=" + std::to_string(g.max_degree()) + " want=" + std::to_string(want));
    } else if (f == "b") {
        report(out, "b.count", params, n == (1 << k) + 1, "n=" + std::to_string(n));
        report(out, "b.hub_degree", params, g.degree(inst.composed->view.t) == (1 << k),
               "deg(t)=" + std::to_string(g.degree(inst.composed->view.t)));
    } else if (f == "eb" || f == "pb") {
        int m = f == "eb" ? k / 2 : (3 * k) / 4 - 1;
        int expect = inst.spec.n ? *inst.spec.n : (1 << (k - 1)) + (1 << m);
        report(out, f + ".count", params, n == expect,
               "n=" + std::to_string(n) + " want=" + std::to_string(expect));
        report(out, f + ".hub_degree", params, g.degree(inst.composed->view.t) == n - 1,
               "deg(t)=" + std::to_string(g.degree(inst.composed->view.t)));
    } else if (f == "rb") {
        report(out, "rb.hub_degree", params, g.degree(inst.rb->t) == n - 1,
               "deg(t)=" + std::to_string(g.degree(inst.rb->t)));
    } else if (f == "ab") {
        report(out, "ab.count", params, n == (1 << k) + 1, "n=" + std::to_string(n));
        int scount = static_cast<int>(inst.ab_minus->shortcuts.size());
        if (k == 2) report(out, "ab.shortcuts", params, scount == 1, std::to_string(scount));
        if (k == 3) report(out, "ab.shortcuts", params, scount == 4, std::to_string(scount));
    } else if (f == "k3sp") {
        report(out, "k3sp.min_degree", params, g.min_degree() <= 2,
               "min_degree=" + std::to_string(g.min_degree()));
    }
}

inline void check_distances(const FamilyInstance& inst, const std::string& params,
                            std::vector<VerificationReport>& out) {
    const std::string& f = inst.spec.family;
    const Graph& g = inst.graph.graph;
    int k = inst.spec.k;
    if (f == "bt") {
        report(out, "bt.root_ecc", params, eccentricity(g, 0) == k,
               "ecc=" + std::to_string(eccentricity(g, 0)));
    } else if (f == "mb") {
        auto d = detail::bfs_raw(g, inst.mb->s);
        bool ok_t = d[inst.mb->t] == k + 1;
        bool ok_tp = d[inst.mb->t_prime] == k;
        bool ok_sp2 = d[inst.mb->s_prime] == 1;
        report(out, "mb.dist_s_t", params, ok_t, "dist=" + std::to_string(d[inst.mb->t]));
        report(out, "mb.dist_s_tprime", params, ok_tp,
               "dist=" + std::to_string(d[inst.mb->t_prime]));
        report(out, "mb.dist_s_sprime", params, ok_sp2,
               "dist=" + std::to_string(d[inst.mb->s_prime]));
    } else if (f == "b" || f == "eb" || f == "pb" || f == "rb") {
        int t = f == "rb" ? inst.rb->t : inst.composed->view.t;
        report(out, f + ".hub_ecc", params, eccentricity(g, t) == 1,
               "ecc(t)=" + std::to_string(eccentricity(g, t)));
    } else if (f == "ab") {
        // every tree vertex reaches s along the decreasing-label chain in
        // exactly dist_label steps, at most ceil(k/3)
        const AbFamily& ab = *inst.ab_minus;
        bool ok = true;
        std::string w;
        int maxlab = (k + 2) / 3;
        for (int v = 0; v < ab.graph.graph.vertex_count() && ok; ++v) {
            if (ab.label[v] > maxlab) {
                ok = false;
                w = "label(" + std::to_string(v) + ")=" + std::to_string(ab.label[v]);
                break;
            }
            int cur = v, steps = 0;
            while (cur != ab.s) {
                int nxt = ab.chain_next[cur];
                if (nxt < 0 || !ab.graph.graph.has_edge(cur, nxt) ||
                    ab.label[nxt] != ab.label[cur] - 1) {
                    ok = false;
                    w = "chain breaks at " + std::to_string(cur);
                    break;
                }
                cur = nxt;
                ++steps;
            }
            if (ok && steps != ab.label[v]) {
                ok = false;
                w = "chain length " + std::to_string(steps) + " != label " +
                    std::to_string(ab.label[v]) + " at " + std::to_string(v);
            }
        }
        report(out, "ab.label_chain", params, ok, w);
    }
}

inline void check_sp(const FamilyInstance& inst, const std::string& params,
                     std::vector<VerificationReport>& out) {
    const std::string& f = inst.spec.family;
    const Graph& g = inst.graph.graph;
    if (f == "bt" || f == "pb") return;  // no SP claim
    if (f == "k3sp") {
        report(out, "k3sp.sp", params, is_sp_any_k3_pair(g));
        return;
    }
    auto s = inst.graph.role_vertex(Role::s), t = inst.graph.role_vertex(Role::t);
    if (!s || !t) return;
    SpResult r = is_sp(g, *s, *t);
    if (f == "ab") {
        bool expect_sp = inst.spec.k < 2;
        report(out, "ab.sp_claim", params, r.sp == expect_sp,
               r.sp ? "reduced to a single edge"
                    : "kernel has " + std::to_string(r.kernel_vertices.size()) + " vertices");
    } else {
        report(out, f + ".sp", params, r.sp,
               r.sp ? "" : "kernel has " + std::to_string(r.kernel_vertices.size()) + " vertices");
    }
}

inline void check_planar(const FamilyInstance& inst, const std::string& params,
                         std::vector<VerificationReport>& out) {
    const std::string& f = inst.spec.family;
    if (f != "ab" && f != "pb") return;
    auto pl = planarity_check(inst.graph.graph);
    if (!pl.planar) {
        report(out, f + ".planar", params, false, "planarity check failed");
        return;
    }
    auto cert = verify_embedding(inst.graph.graph, pl.rotation);
    report(out, f + ".planar", params, cert.euler_ok,
           "faces=" + std::to_string(cert.faces));
}

inline void check_biconnected(const FamilyInstance& inst, const std::string& params,
                              std::vector<VerificationReport>& out) {
    if (inst.spec.family != "k3sp") return;
    report(out, "k3sp.biconnected", params, is_biconnected(inst.graph.graph));
}

inline void check_scheme(const FamilyInstance& inst, const std::string& params,
                         std::vector<VerificationReport>& out) {
    int bound = claimed_bound(inst);
    try {
        auto [worst, origin] = scheme_worst(inst);
        report(out, inst.spec.family + ".scheme_bound", params, worst <= bound,
               "worst=" + std::to_string(worst) + " bound=" + std::to_string(bound) +
                   " origin=" + std::to_string(origin));
        if (inst.spec.family == "bt") {
            auto root_sched = family_scheme(inst, 0);
            auto val = validate_schedule(claim_graph(inst), root_sched);
            report(out, "bt.scheme_root_exact", params,
                   val.ok && val.completion_round == inst.spec.k,
                   "rounds=" + std::to_string(val.completion_round));
        }
    } catch (const std::logic_error& e) {
        report(out, inst.spec.family + ".scheme_bound", params, false, e.what());
    }
}

inline void check_exact(const FamilyInstance& inst, const std::string& params,
                        std::vector<VerificationReport>& out, int cap) {
    const Graph& g = claim_graph(inst);
    const std::string& f = inst.spec.family;
    int bound = claimed_bound(inst);
    if (g.vertex_count() > cap) {
        report(out, f + ".exact", params, true, "scheme-only (n > cap)");
        return;
    }
    // equality for the broadcast-graph families, upper bound otherwise
    bool equality = f == "bt" || f == "mb" || f == "b" || f == "eb" || f == "pb";
    if (equality) {
        auto bt = broadcast_time(g, cap);
        report(out, f + ".exact", params, bt.rounds == bound,
               "b(G)=" + std::to_string(bt.rounds) + " want=" + std::to_string(bound) +
                   " worst_origin=" + std::to_string(bt.worst_origin));
    } else {
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (!broadcast_feasible(g, v, bound, cap)) {
                report(out, f + ".exact", params, false,
                       "no schedule within " + std::to_string(bound) + " rounds from " +
                           std::to_string(v));
                return;
            }
        }
        report(out, f + ".exact", params, true, "b(G) <= " + std::to_string(bound));
    }
    if (f == "mb" && inst.spec.k >= 3) {
        auto r = exact_broadcast_time(g, inst.mb->s, cap);
        report(out, "mb.exact_terminal", params, r.rounds == inst.spec.k + 1,
               "b(s)=" + std::to_string(r.rounds));
    }
}

}  // namespace detail

/// Runs the mapped structural and broadcast checks for one family instance.
/// `checks` picks from {degrees, distances, sp, planar, biconnected, scheme,
/// exact}; empty means all of them.
inline std::vector<VerificationReport> verify_family_claims(const FamilySpec& spec,
                                                            const std::set<std::string>& checks,
                                                            int cap = 24) {
    FamilyInstance inst = instantiate(spec);
    std::string params = detail::spec_params(spec, inst.graph);
    auto want = [&](const std::string& c) { return checks.empty() || checks.count(c) > 0; };
    std::vector<VerificationReport> out;
    if (want("degrees")) detail::check_counts_degrees(inst, params, out);
    if (want("distances")) detail::check_distances(inst, params, out);
    if (want("sp")) detail::check_sp(inst, params, out);
    if (want("planar")) detail::check_planar(inst, params, out);
    if (want("biconnected")) detail::check_biconnected(inst, params, out);
    if (want("scheme")) detail::check_scheme(inst, params, out);
    if (want("exact")) detail::check_exact(inst, params, out, cap);
    return out;
}

/// Claims harness over a dimension range of one family.
inline std::vector<VerificationReport> verify_family_claims_range(
    const std::string& family, int k_lo, int k_hi, const std::set<std::string>& checks,
    int cap = 24) {
    std::vector<VerificationReport> out;
    for (int k = k_lo; k <= k_hi; ++k) {
        FamilySpec spec;
        spec.family = family;
        spec.k = k;
        if (family == "rb") spec.n = 1 << k;
        auto part = verify_family_claims(spec, checks, cap);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace bcast
