#pragma once

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bcast/claims.hpp"
#include "bcast/json_io.hpp"

namespace bcast {

// Exit codes: 0 success, 1 verification or claim failure, 2 invalid input or
// contract error.

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw contract_error("cannot write " + path);
    out << content;
}

inline void emit(const std::string& out_path, const std::string& content,
                 const std::string& summary) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_file(out_path, content);
        std::cout << summary << "\n";
    }
}

// Recognizes the family of a loaded graph; returns an empty family string if
// nothing matches.
inline FamilySpec recognize_spec(const LabeledGraph& g) {
    FamilySpec spec;
    if (auto bt = recognize_bt(g)) {
        spec.family = "bt";
        spec.k = bt->tree.dim();
        return spec;
    }
    if (auto mb = recognize_mb(g)) {
        spec.family = "mb";
        spec.k = mb->k;
        return spec;
    }
    if (auto c = recognize_composed(g)) {
        spec.family = c->view.fam == 'b' ? "b" : (c->view.fam == 'e' ? "eb" : "pb");
        spec.k = c->view.k;
        if (c->view.fam != 'b') {
            int m = c->view.fam == 'e' ? c->view.k / 2 : (3 * c->view.k) / 4 - 1;
            int full = (1 << (c->view.k - 1)) + (1 << m);
            if (g.graph.vertex_count() != full) spec.n = g.graph.vertex_count();
        }
        return spec;
    }
    if (auto rb = recognize_rb(g)) {
        spec.family = "rb";
        spec.n = g.graph.vertex_count();
        spec.k = rb->k;
        return spec;
    }
    if (auto ab = recognize_ab(g, false)) {
        spec.family = "ab";
        spec.k = ab->k;
        return spec;
    }
    if (auto ab = recognize_ab(g, true)) {
        spec.family = "ab";
        spec.k = ab->k;
        return spec;
    }
    return spec;
}

inline std::string report_json_line(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    j["params"] = r.params;
    j["pass"] = r.pass;
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j.dump();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::pair<int, int> parse_range(const std::string& text) {
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            int k = std::stoi(text);
            return {k, k};
        }
        return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
    } catch (const std::exception&) {
        throw contract_error("bad range '" + text + "', expected A..B");
    }
}

inline int cmd_gen(const std::string& family, int k, std::optional<int> n,
                   std::optional<std::uint64_t> seed, const std::string& format,
                   const std::string& out_path) {
    FamilySpec spec;
    spec.family = family;
    spec.k = k;
    spec.n = n;
    spec.seed = seed;
    LabeledGraph g = build_family(spec);
    std::string content = format == "dot" ? graph_to_dot(g, family) : graph_to_json_text(g);
    std::string summary = "gen: " + family + " n=" + std::to_string(g.graph.vertex_count()) +
                          " m=" + std::to_string(g.graph.edge_count()) + " -> " + out_path;
    emit(out_path, content, summary);
    return 0;
}

inline int cmd_schedule(const std::string& graph_path, const std::string& scheme, int origin,
                        const std::string& format, const std::string& out_path) {
    LabeledGraph g = load_graph(graph_path);
    Schedule sched;
    if (scheme == "binomial") sched = scheme_binomial(g, origin);
    else if (scheme == "mb") sched = scheme_mb(g, origin);
    else if (scheme == "composed") sched = scheme_composed(g, origin);
    else if (scheme == "ab") sched = scheme_ab(g, origin);
    else if (scheme == "greedy") sched = greedy_schedule(g.graph, origin);
    else throw contract_error("unknown scheme '" + scheme + "'");
    auto val = validate_schedule(g.graph, sched);
    if (!val.ok) throw std::logic_error("generated schedule is invalid: " +
                                        val.violation->describe());
    std::string content =
        format == "json" ? schedule_to_json(sched).dump(2) + "\n" : schedule_to_csv(sched);
    std::string summary = "schedule: scheme=" + scheme + " origin=" + std::to_string(origin) +
                          " rounds=" + std::to_string(val.completion_round) + " -> " + out_path;
    emit(out_path, content, summary);
    return 0;
}

inline int cmd_validate(const std::string& graph_path, const std::string& sched_path) {
    LabeledGraph g = load_graph(graph_path);
    Schedule sched = load_schedule(sched_path);
    auto val = validate_schedule(g.graph, sched);
    if (val.ok) {
        std::cout << "valid: completes at round " << val.completion_round << "\n";
        return 0;
    }
    std::cout << "violation: " << val.violation->describe() << "\n";
    return 1;
}

inline int cmd_btime(const std::string& graph_path, std::optional<int> origin, bool exact,
                     int cap, const std::string& witness_path) {
    LabeledGraph g = load_graph(graph_path);
    if (origin && (*origin < 0 || *origin >= g.graph.vertex_count()))
        throw contract_error("btime: origin out of range");
    Schedule witness;
    int rounds;
    if (exact) {
        if (origin) {
            auto r = exact_broadcast_time(g.graph, *origin, cap);
            rounds = r.rounds;
            witness = r.schedule;
        } else {
            auto r = broadcast_time(g.graph, cap);
            rounds = r.rounds;
            witness = exact_broadcast_time(g.graph, r.worst_origin, cap).schedule;
            std::cout << rounds << " (worst origin " << r.worst_origin << ")\n";
            if (!witness_path.empty()) write_file(witness_path, schedule_to_csv(witness));
            return 0;
        }
    } else {
        // greedy upper bound
        if (origin) {
            witness = greedy_schedule(g.graph, *origin);
            rounds = validate_schedule(g.graph, witness).completion_round;
        } else {
            rounds = 0;
            int worst = 0;
            for (int v = 0; v < g.graph.vertex_count(); ++v) {
                Schedule s = greedy_schedule(g.graph, v);
                int r = validate_schedule(g.graph, s).completion_round;
                if (r > rounds) {
                    rounds = r;
                    worst = v;
                    witness = s;
                }
            }
            std::cout << rounds << " (greedy upper bound, worst origin " << worst << ")\n";
            if (!witness_path.empty()) write_file(witness_path, schedule_to_csv(witness));
            return 0;
        }
    }
    std::cout << rounds << "\n";
    if (!witness_path.empty()) write_file(witness_path, schedule_to_csv(witness));
    return 0;
}

inline int cmd_verify(const std::string& graph_path, const std::string& checks_list,
                      const std::string& terminals, int cap) {
    LabeledGraph g = load_graph(graph_path);
    std::vector<VerificationReport> reports;
    std::set<std::string> checks;
    for (const auto& c : split(checks_list, ',')) checks.insert(c);
    static const std::set<std::string> known = {"sp",      "planar", "biconnected", "degrees",
                                                "distances", "scheme", "exact"};
    for (const auto& c : checks)
        if (!known.count(c)) throw contract_error("unknown check '" + c + "'");

    int s = -1, t = -1;
    if (!terminals.empty()) {
        auto parts = split(terminals, ',');
        if (parts.size() != 2) throw contract_error("--terminals expects S,T");
        s = std::stoi(parts[0]);
        t = std::stoi(parts[1]);
    } else {
        auto rs = g.role_vertex(Role::s), rt = g.role_vertex(Role::t);
        if (rs) s = *rs;
        if (rt) t = *rt;
    }

    if (checks.count("sp")) {
        if (s < 0 || t < 0)
            throw contract_error("sp check needs terminals (roles or --terminals)");
        SpResult r = is_sp(g.graph, s, t);
        std::string witness;
        if (!r.sp) {
            witness = "not SP; irreducible kernel on " +
                      std::to_string(r.kernel_vertices.size()) + " vertices, " +
                      std::to_string(r.kernel_edges.size()) + " edges";
        }
        reports.push_back({"sp", "terminals=" + std::to_string(s) + "," + std::to_string(t),
                           r.sp, witness});
    }
    if (checks.count("planar")) {
        auto pl = planarity_check(g.graph);
        bool ok = pl.planar;
        std::string witness = "non-planar";
        if (ok) {
            auto cert = verify_embedding(g.graph, pl.rotation);
            ok = cert.euler_ok;
            witness = "faces=" + std::to_string(cert.faces);
        }
        reports.push_back({"planar", "", ok, witness});
    }
    if (checks.count("biconnected")) {
        bool ok = is_biconnected(g.graph);
        reports.push_back({"biconnected", "", ok, ""});
    }

    std::set<std::string> family_checks;
    for (const auto& c : {"degrees", "distances", "scheme", "exact"})
        if (checks.count(c)) family_checks.insert(c);
    if (!family_checks.empty()) {
        FamilySpec spec = recognize_spec(g);
        if (spec.family.empty())
            throw contract_error("family checks requested but the graph matches no known family");
        auto part = verify_family_claims(spec, family_checks, cap);
        reports.insert(reports.end(), part.begin(), part.end());
    }

    bool all = true;
    for (const auto& r : reports) {
        std::cout << report_json_line(r) << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

inline int cmd_table(const std::string& families_list, const std::string& k_range, int cap,
                     const std::string& out_path) {
    auto [k_lo, k_hi] = parse_range(k_range);
    std::ostringstream csv;
    csv << "family,k,n,claimed_bound,scheme_rounds_worst,exact_rounds,sp,planar\n";
    for (const auto& family : split(families_list, ',')) {
        for (int k = k_lo; k <= k_hi; ++k) {
            FamilySpec spec;
            spec.family = family;
            spec.k = k;
            if (family == "rb") spec.n = 1 << k;
            if (family == "mb" || family == "eb" || family == "pb") {
                if (k < 2) continue;
            }
            if (family == "rb" && k < 1) continue;
            if (k < 0) continue;
            FamilyInstance inst = instantiate(spec);
            const Graph& cg = claim_graph(inst);
            int bound = claimed_bound(inst);
            auto [worst, worst_origin] = scheme_worst(inst);
            (void)worst_origin;
            std::string exact_cell = "scheme-only";
            if (cg.vertex_count() <= cap) {
                exact_cell = std::to_string(broadcast_time(cg, cap).rounds);
            }
            std::string sp_cell = "-";
            auto rs = inst.graph.role_vertex(Role::s), rt = inst.graph.role_vertex(Role::t);
            if (rs && rt) sp_cell = is_sp(inst.graph.graph, *rs, *rt).sp ? "yes" : "no";
            std::string planar_cell = "no";
            auto pl = planarity_check(inst.graph.graph);
            if (pl.planar && verify_embedding(inst.graph.graph, pl.rotation).euler_ok)
                planar_cell = "yes";
            csv << family << ',' << k << ',' << inst.graph.graph.vertex_count() << ',' << bound
                << ',' << worst << ',' << exact_cell << ',' << sp_cell << ',' << planar_cell
                << "\n";
        }
    }
    emit(out_path, csv.str(), "table: -> " + out_path);
    return 0;
}

}  // namespace detail

/// Command-line front end; returns the process exit code.
inline int run_cli(std::vector<std::string> args) {
    CLI::App app{"workbench for broadcast schemes on series-parallel and planar graph families"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "construct a family instance");
    std::string gen_family, gen_format = "json", gen_out;
    int gen_k = -1;
    std::optional<int> gen_n;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("family", gen_family, "bt|mb|b|eb|rb|ab|pb|k3sp")->required();
    gen->add_option("--k", gen_k, "dimension (k3sp: number of extension steps)");
    gen->add_option("--n", gen_n, "target vertex count (eb/pb trims, rb size)");
    gen->add_option("--seed", gen_seed, "random seed (k3sp)");
    gen->add_option("--format", gen_format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    // schedule
    auto* sch = app.add_subcommand("schedule", "emit a broadcast schedule");
    std::string sch_graph, sch_scheme, sch_format = "csv", sch_out;
    int sch_origin = 0;
    sch->add_option("graph", sch_graph, "graph json path")->required();
    sch->add_option("--scheme", sch_scheme, "binomial|mb|composed|ab|greedy")->required();
    sch->add_option("--origin", sch_origin, "originator vertex")->required();
    sch->add_option("--format", sch_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sch->add_option("--out", sch_out, "output path (stdout when omitted)");

    // validate
    auto* val = app.add_subcommand("validate", "validate a schedule against a graph");
    std::string val_graph, val_sched;
    val->add_option("graph", val_graph, "graph json path")->required();
    val->add_option("schedule", val_sched, "schedule csv/json path")->required();

    // btime
    auto* bt = app.add_subcommand("btime", "broadcast time (greedy bound or exact)");
    std::string bt_graph, bt_witness;
    std::optional<int> bt_origin;
    bool bt_exact = false;
    int bt_cap = 24;
    bt->add_option("graph", bt_graph, "graph json path")->required();
    bt->add_option("--origin", bt_origin, "originator (default: worst over all)");
    bt->add_flag("--exact", bt_exact, "run the exact solver");
    bt->add_option("--cap", bt_cap, "exact solver size cap (default 24)");
    bt->add_option("--witness", bt_witness, "write the witness schedule csv here");

    // verify
    auto* ver = app.add_subcommand("verify", "run structural and claim checks");
    std::string ver_graph, ver_checks, ver_terminals;
    int ver_cap = 24;
    ver->add_option("graph", ver_graph, "graph json path")->required();
    ver->add_option("--checks", ver_checks,
                    "comma list: sp,planar,biconnected,degrees,distances,scheme,exact")
        ->required();
    ver->add_option("--terminals", ver_terminals, "S,T override for the sp check");
    ver->add_option("--cap", ver_cap, "exact solver size cap");

    // table
    auto* tab = app.add_subcommand("table", "claims table as csv");
    std::string tab_families, tab_k, tab_out;
    int tab_cap = 24;
    tab->add_option("--families", tab_families, "comma list of families")->required();
    tab->add_option("--k", tab_k, "dimension range A..B")->required();
    tab->add_option("--cap", tab_cap, "exact solver size cap");
    tab->add_option("--out", tab_out, "output path (stdout when omitted)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return detail::cmd_gen(gen_family, gen_k, gen_n, gen_seed, gen_format, gen_out);
        if (sch->parsed())
            return detail::cmd_schedule(sch_graph, sch_scheme, sch_origin, sch_format, sch_out);
        if (val->parsed()) return detail::cmd_validate(val_graph, val_sched);
        if (bt->parsed()) return detail::cmd_btime(bt_graph, bt_origin, bt_exact, bt_cap,
                                                   bt_witness);
        if (ver->parsed()) return detail::cmd_verify(ver_graph, ver_checks, ver_terminals,
                                                     ver_cap);
        if (tab->parsed()) return detail::cmd_table(tab_families, tab_k, tab_cap, tab_out);
    } catch (const contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const capability_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace bcast
