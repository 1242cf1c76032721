#include <catch2/catch_amalgamated.hpp>

#include "bcast/schemes.hpp"

using namespace bcast;

namespace {

int completion(const Graph& g, const Schedule& s) {
    auto val = validate_schedule(g, s);
    INFO((val.ok ? "" : val.violation->describe()));
    REQUIRE(val.ok);
    return val.completion_round;
}

// telephone-model sanity: the informed set at most doubles per round
void check_doubling(const Schedule& s) {
    int informed = 1;
    for (const auto& r : s.rounds) {
        CHECK(static_cast<int>(r.size()) <= informed);
        informed += static_cast<int>(r.size());
    }
}

}  // namespace

TEST_CASE("validate_schedule contract cases") {
    auto bt3 = binomial_tree(3);
    auto sched = scheme_binomial(bt3.tree, 0);
    auto val = validate_schedule(bt3.graph.graph, sched);
    REQUIRE(val.ok);
    CHECK(val.completion_round == 3);

    // an uninformed vertex calls
    Schedule bad;
    bad.origin = 0;
    bad.rounds = {{{3, 7}}};
    auto bv = validate_schedule(bt3.graph.graph, bad);
    REQUIRE_FALSE(bv.ok);
    CHECK(bv.violation->call->caller == 3);
    CHECK(bv.violation->rule.find("not informed") != std::string::npos);

    // empty schedule on a single vertex completes at round 0
    Schedule empty;
    empty.origin = 0;
    auto ev = validate_schedule(binomial_tree(0).graph.graph, empty);
    REQUIRE(ev.ok);
    CHECK(ev.completion_round == 0);

    // empty schedule elsewhere leaves vertices uninformed
    auto iv = validate_schedule(bt3.graph.graph, empty);
    REQUIRE_FALSE(iv.ok);
    CHECK(iv.violation->rule.find("uninformed") != std::string::npos);

    // double-informing is a violation, not a no-op
    Schedule twice;
    twice.origin = 0;
    twice.rounds = {{{0, 1}}, {{0, 1}}};
    auto tv = validate_schedule(bt3.graph.graph, twice);
    REQUIRE_FALSE(tv.ok);
    CHECK(tv.violation->rule.find("already informed") != std::string::npos);

    // a caller may not call twice in one round
    Schedule busy;
    busy.origin = 0;
    busy.rounds = {{{0, 1}, {0, 2}}};
    auto bv2 = validate_schedule(bt3.graph.graph, busy);
    REQUIRE_FALSE(bv2.ok);

    // calls must use edges
    Schedule noedge;
    noedge.origin = 0;
    noedge.rounds = {{{0, 7}}};
    CHECK_FALSE(validate_schedule(bt3.graph.graph, noedge).ok);
}

TEST_CASE("scheme_binomial bounds") {
    auto bt4 = binomial_tree(4);
    CHECK(completion(bt4.graph.graph, scheme_binomial(bt4.tree, 0)) == 4);

    auto bt3 = binomial_tree(3);
    CHECK(completion(bt3.graph.graph, scheme_binomial(bt3.tree, 7)) <= 5);

    auto bt0 = binomial_tree(0);
    CHECK(scheme_binomial(bt0.tree, 0).round_count() == 0);

    for (int k = 0; k <= 6; ++k) {
        auto bt = binomial_tree(k);
        CHECK(completion(bt.graph.graph, scheme_binomial(bt.tree, 0)) == k);
    }
    for (int k = 1; k <= 8; ++k) {
        auto bt = binomial_tree(k);
        for (int v = 0; v < bt.graph.graph.vertex_count(); ++v) {
            auto s = scheme_binomial(bt.tree, v);
            CHECK(completion(bt.graph.graph, s) <= 2 * k - 1);
            check_doubling(s);
        }
    }
}

TEST_CASE("complement_decomposition partitions the tree") {
    auto bt4 = binomial_tree(4);
    CHECK(complement_decomposition(bt4.tree, 0, 4).empty());

    // the returned subtrees partition everything outside v's enclosing
    // subtree, with strictly decreasing dimensions
    for (int k : {3, 4, 5}) {
        auto bt = binomial_tree(k);
        for (int v = 0; v < (1 << k); ++v) {
            for (int d = 0; d <= k; ++d) {
                auto pieces = complement_decomposition(bt.tree, v, d);
                std::vector<bool> seen(1 << k, false);
                int base = btl::enclosing_root(v, d);
                for (int y = 0; y < (1 << d); ++y) seen[base + y] = true;
                int prev_dim = k + 1;
                for (auto [root, dim] : pieces) {
                    CHECK(dim < prev_dim);
                    prev_dim = dim;
                    CHECK(btl::dim_of(root, k) >= dim);
                    for (int y = 0; y < (1 << dim); ++y) {
                        CHECK_FALSE(seen[root + y]);
                        seen[root + y] = true;
                    }
                }
                CHECK(std::count(seen.begin(), seen.end(), false) == 0);
            }
        }
    }

    auto bt3 = binomial_tree(3);
    auto pieces = complement_decomposition(bt3.tree, 7, 0);
    int total = 0;
    for (auto [root, dim] : pieces) total += 1 << dim;
    CHECK(total == 7);

    auto bt4b = binomial_tree(4);
    auto pieces2 = complement_decomposition(bt4b.tree, 9, 2);
    int total2 = 0;
    for (auto [root, dim] : pieces2) total2 += 1 << dim;
    CHECK(total2 == 12);
}

TEST_CASE("greedy schedule") {
    // star from the center: sequential calls
    auto star = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(completion(star, greedy_schedule(star, 0)) == 4);

    std::vector<std::pair<int, int>> c8;
    for (int i = 0; i < 8; ++i) c8.emplace_back(i, (i + 1) % 8);
    auto cyc = make_graph(8, c8);
    for (int v = 0; v < 8; ++v) CHECK(completion(cyc, greedy_schedule(cyc, v)) == 4);

    // every family instance yields a valid greedy schedule
    for (int k = 2; k <= 5; ++k) {
        auto g = mirrored_binomial(k).graph.graph;
        for (int v = 0; v < g.vertex_count(); v += 3) check_doubling(greedy_schedule(g, v));
    }
    CHECK_THROWS_AS(greedy_schedule(make_graph(3, {{0, 1}}), 0), contract_error);
}

TEST_CASE("scheme_mb completes within the claimed bound") {
    for (int k = 2; k <= 8; ++k) {
        auto mb = mirrored_binomial(k);
        const Graph& g = mb.graph.graph;
        int bound = (3 * k) / 2;
        int worst = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto s = scheme_mb(mb, v);
            int r = completion(g, s);
            worst = std::max(worst, r);
            check_doubling(s);
        }
        CHECK(worst <= bound);
    }
}

TEST_CASE("scheme_mb terminal originators") {
    for (int k = 2; k <= 8; ++k) {
        auto mb = mirrored_binomial(k);
        const Graph& g = mb.graph.graph;
        for (int v : {mb.s, mb.s_prime, mb.t, mb.t_prime})
            CHECK(completion(g, scheme_mb(mb, v)) <= k + 1);
    }
    // MB_2 interior
    auto mb2 = mirrored_binomial(2);
    CHECK(completion(mb2.graph.graph, scheme_mb(mb2, 1)) <= 3);
    CHECK(completion(mb2.graph.graph, scheme_mb(mb2, 2)) <= 3);
}

TEST_CASE("scheme_mb rejects other graphs") {
    CHECK_THROWS_AS(scheme_mb(binomial_tree(3).graph, 0), contract_error);
}

TEST_CASE("scheme_composed on B_k") {
    for (int k = 0; k <= 6; ++k) {
        auto b = binomial_sp_composed(k);
        const Graph& g = b.graph.graph;
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto s = scheme_composed(b, v);
            CHECK(completion(g, s) <= k + 1);
            check_doubling(s);
        }
    }
}

TEST_CASE("scheme_composed on EB_k") {
    for (int k = 2; k <= 10; ++k) {
        auto eb = extended_binomial(k);
        const Graph& g = eb.graph.graph;
        int worst = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            worst = std::max(worst, completion(g, scheme_composed(eb, v)));
        CHECK(worst <= k);
    }
}

TEST_CASE("scheme_composed on trimmed EB_k") {
    for (int k = 3; k <= 8; ++k) {
        int lo = (1 << (k - 1)) + 1;
        int hi = (1 << (k - 1)) + (1 << (k / 2));
        for (int n : {lo, (lo + hi) / 2, hi - 1}) {
            auto eb = extended_binomial(k, n);
            const Graph& g = eb.graph.graph;
            for (int v = 0; v < g.vertex_count(); ++v)
                CHECK(completion(g, scheme_composed(eb, v)) <= k);
        }
    }
}

TEST_CASE("scheme_composed on PB_k") {
    for (int k = 2; k <= 8; ++k) {
        auto pb = planar_broadcast(k);
        const Graph& g = pb.graph.graph;
        int worst = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            worst = std::max(worst, completion(g, scheme_composed(pb, v)));
        CHECK(worst <= k);
    }
    // trimmed variants
    for (int k : {5, 7}) {
        int lo = (1 << (k - 1)) + 1;
        int hi = (1 << (k - 1)) + (1 << ((3 * k) / 4 - 1));
        for (int n : {lo, (lo + hi) / 2}) {
            auto pb = planar_broadcast(k, n);
            const Graph& g = pb.graph.graph;
            for (int v = 0; v < g.vertex_count(); ++v)
                CHECK(completion(g, scheme_composed(pb, v)) <= k);
        }
    }
}

TEST_CASE("scheme_composed on the relaxed SP graph") {
    for (int n = 2; n <= 64; ++n) {
        auto rb = relaxed_sp(n);
        const Graph& g = rb.graph.graph;
        int bound = ceil_log2(static_cast<std::uint64_t>(n)) + 1;
        for (int v = 0; v < n; ++v) CHECK(completion(g, scheme_composed(rb, v)) <= bound);
    }
}

TEST_CASE("scheme_composed rejects other graphs") {
    CHECK_THROWS_AS(scheme_composed(mirrored_binomial(3).graph, 0), contract_error);
}

TEST_CASE("scheme_ab stays within ceil(4k/3)") {
    for (int k = 0; k <= 7; ++k) {
        auto ab = accelerated_binomial_minus_t(k);
        const Graph& g = ab.graph.graph;
        int bound = (4 * k + 2) / 3;
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto s = scheme_ab(ab, v);
            if (g.vertex_count() > 1) CHECK(completion(g, s) <= bound);
            check_doubling(s);
        }
    }
    // from s the binomial scheme alone finishes in k rounds
    auto ab6 = accelerated_binomial_minus_t(6);
    CHECK(completion(ab6.graph.graph, scheme_ab(ab6, ab6.s)) <= 6);
}

TEST_CASE("scheme_ab rejects graphs without labels or with t") {
    auto full = accelerated_binomial(3);
    CHECK_THROWS_AS(scheme_ab(full.graph, 0), contract_error);
    auto minus = accelerated_binomial_minus_t(3);
    LabeledGraph unlabeled = minus.graph;
    unlabeled.dist_label.clear();
    CHECK_THROWS_AS(scheme_ab(unlabeled, 0), contract_error);
}

TEST_CASE("schedule serialization round trips") {
    auto mb4 = mirrored_binomial(4);
    auto sched = scheme_mb(mb4, 5);
    std::string csv = schedule_to_csv(sched);
    Schedule parsed = schedule_from_csv(csv);
    CHECK(parsed.origin == sched.origin);
    CHECK(schedule_to_csv(parsed) == csv);
    auto val = validate_schedule(mb4.graph.graph, parsed);
    CHECK(val.ok);

    Schedule pj = schedule_from_json_text(schedule_to_json(sched).dump());
    CHECK(schedule_to_csv(pj) == csv);

    CHECK_THROWS_AS(schedule_from_csv("nope\n1,2,3\n"), contract_error);
    CHECK_THROWS_AS(schedule_from_csv("round,caller,callee\n0,1,2\n"), contract_error);
    CHECK_THROWS_AS(schedule_from_csv("round,caller,callee\nx,1,2\n"), contract_error);
}
