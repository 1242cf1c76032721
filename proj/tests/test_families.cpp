#include <catch2/catch_amalgamated.hpp>

#include "bcast/families.hpp"
#include "bcast/json_io.hpp"

using namespace bcast;

TEST_CASE("binomial tree shape") {
    auto bt0 = binomial_tree(0);
    CHECK(bt0.graph.graph.vertex_count() == 1);
    CHECK(bt0.tree.subtree_dim[0] == 0);

    auto bt4 = binomial_tree(4);
    CHECK(bt4.graph.graph.vertex_count() == 16);
    CHECK(bt4.graph.graph.degree(0) == 4);

    auto bt3 = binomial_tree(3);
    CHECK(bt3.graph.graph.edge_count() == 7);

    // children dimensions strictly decrease
    for (int x : {0, 8, 12}) {
        auto ch = btl::children(x, 4);
        for (size_t i = 0; i + 1 < ch.size(); ++i)
            CHECK(btl::dim_of(ch[i], 4) > btl::dim_of(ch[i + 1], 4));
    }
    // creation steps: root 0, leaves k
    CHECK(bt4.tree.creation_step[0] == 0);
    CHECK(bt4.tree.creation_step[15] == 4);
    CHECK(bt4.tree.creation_step[8] == 1);
}

TEST_CASE("mirrored binomial structure") {
    auto mb2 = mirrored_binomial(2);
    CHECK(is_isomorphic(mb2.graph.graph, make_graph(4, {{0, 1}, {1, 2}, {2, 3}})));
    CHECK(mb2.graph.graph.vertex_count() == 4);

    auto mb3 = mirrored_binomial(3);
    std::vector<std::pair<int, int>> c8;
    for (int i = 0; i < 8; ++i) c8.emplace_back(i, (i + 1) % 8);
    CHECK(is_isomorphic(mb3.graph.graph, make_graph(8, c8)));

    auto mb5 = mirrored_binomial(5);
    CHECK(mb5.graph.graph.vertex_count() == 32);
    CHECK(mb5.graph.graph.max_degree() == 4);

    CHECK_THROWS_AS(mirrored_binomial(1), contract_error);
}

TEST_CASE("mirrored binomial invariants across k") {
    for (int k = 2; k <= 10; ++k) {
        auto mb = mirrored_binomial(k);
        const Graph& g = mb.graph.graph;
        CHECK(g.vertex_count() == (1 << k));
        CHECK(g.max_degree() == (k == 2 ? 2 : k - 1));
        if (k <= 8) {
            auto d = detail::bfs_raw(g, mb.s);
            CHECK(d[mb.t] == k + 1);
            CHECK(d[mb.t_prime] == k);
        }
        // spanning-tree views: every tree edge is a graph edge, matching
        // pairs leaves across the trees
        int half = 1 << (k - 1);
        for (int x = 1; x < half; ++x) {
            CHECK(g.has_edge(mb.u_id[x], mb.u_id[btl::parent(x)]));
            CHECK(g.has_edge(mb.d_id[x], mb.d_id[btl::parent(x)]));
        }
        for (int x = 1; x < half; x += 2) {
            int u_leaf = mb.u_id[x];
            CHECK(mb.partner[u_leaf] >= 0);
            CHECK(g.has_edge(u_leaf, mb.partner[u_leaf]));
            CHECK(mb.d_label[mb.partner[u_leaf]] >= 0);
            CHECK(mb.partner[mb.partner[u_leaf]] == u_leaf);
        }
        // the swap and flip permutations are automorphisms with the stated
        // role action
        auto is_automorphism = [&](const std::vector<int>& p) {
            std::vector<Edge> mapped;
            for (const Edge& e : g.edges()) mapped.emplace_back(p[e.u], p[e.v]);
            std::sort(mapped.begin(), mapped.end());
            return mapped == g.edges();
        };
        if (k >= 3) {
            REQUIRE(mb.swap_perm.size() == static_cast<size_t>(g.vertex_count()));
            CHECK(is_automorphism(mb.swap_perm));
            CHECK(mb.swap_perm[mb.s] == mb.s_prime);
            CHECK(mb.swap_perm[mb.t] == mb.t_prime);
            CHECK(is_automorphism(mb.flip_perm));
            CHECK(mb.flip_perm[mb.s] == mb.t_prime);
            CHECK(mb.flip_perm[mb.s_prime] == mb.t);
        }
        CHECK(is_automorphism(mb.rev_perm));
        CHECK(mb.rev_perm[mb.s] == mb.t);
        CHECK(mb.rev_perm[mb.s_prime] == mb.t_prime);
    }
}

TEST_CASE("binomial sp graph") {
    auto b0 = binomial_sp(0);
    CHECK(b0.graph.graph.vertex_count() == 2);
    CHECK(b0.graph.graph.edge_count() == 1);

    auto b3 = binomial_sp(3);
    CHECK(b3.graph.graph.vertex_count() == 9);
    CHECK(b3.graph.graph.degree(b3.t) == 8);

    auto b2 = binomial_sp(2);
    CHECK(b2.graph.graph.edge_count() == 7);

    // the composed view agrees with the direct constructor
    auto bc = binomial_sp_composed(3);
    CHECK(bc.graph.graph.edges() == b3.graph.graph.edges());
}

TEST_CASE("compose_parallel basics") {
    auto b3 = binomial_sp_composed(3);
    auto b2 = binomial_sp_composed(2);
    auto c = compose_parallel(b3.graph, b2.graph);
    CHECK(c.graph.vertex_count() == 12);
    CHECK(c.role_vertex(Role::s).has_value());
    CHECK(c.role_vertex(Role::t).has_value());

    // composing with a single edge changes nothing but possibly deduping
    LabeledGraph edge;
    edge.graph = make_graph(2, {{0, 1}});
    edge.roles = {{Role::s, 0}, {Role::t, 1}};
    auto same = compose_parallel(b3.graph, edge);
    CHECK(same.graph.vertex_count() == b3.graph.graph.vertex_count());
    CHECK(same.graph.edges() == b3.graph.graph.edges());

    LabeledGraph no_roles;
    no_roles.graph = make_graph(2, {{0, 1}});
    CHECK_THROWS_AS(compose_parallel(b3.graph, no_roles), contract_error);
}

TEST_CASE("extended binomial") {
    auto eb4 = extended_binomial(4);
    CHECK(eb4.graph.graph.vertex_count() == 12);
    auto eb2 = extended_binomial(2);
    CHECK(eb2.graph.graph.vertex_count() == 4);

    auto trimmed = extended_binomial(4, 10);
    CHECK(trimmed.graph.graph.vertex_count() == 10);
    CHECK(trimmed.graph.role_vertex(Role::s).has_value());
    CHECK(trimmed.graph.role_vertex(Role::t).has_value());
    CHECK(is_connected(trimmed.graph.graph));

    CHECK_THROWS_AS(extended_binomial(4, 8), contract_error);
    CHECK_THROWS_AS(extended_binomial(4, 13), contract_error);
    CHECK_THROWS_AS(extended_binomial(1), contract_error);

    // counts across the range
    for (int k = 2; k <= 10; ++k)
        CHECK(extended_binomial(k).graph.graph.vertex_count() ==
              (1 << (k - 1)) + (1 << (k / 2)));
}

TEST_CASE("trim_leaves") {
    auto eb4 = extended_binomial(4);
    std::set<int> zone;
    int sz2 = 1 << eb4.view.trees[1].dim;
    for (int x = 1; x < sz2; ++x) zone.insert(eb4.view.trees[1].id_of[x]);

    auto t0 = trim_leaves(eb4.graph, 0, zone);
    CHECK(t0.graph.edges() == eb4.graph.graph.edges());

    auto t2 = trim_leaves(eb4.graph, 2, zone);
    CHECK(t2.graph.vertex_count() == 10);
    CHECK(t2.graph.edges() == extended_binomial(4, 10).graph.graph.edges());

    CHECK_THROWS_AS(trim_leaves(eb4.graph, static_cast<int>(zone.size()) + 1, zone),
                    contract_error);
}

TEST_CASE("relaxed sp graph") {
    auto r5 = relaxed_sp(5);
    CHECK(r5.graph.graph.vertex_count() == 5);
    CHECK(r5.graph.graph.degree(r5.t) == 4);

    auto r16 = relaxed_sp(16);
    CHECK(r16.graph.graph.vertex_count() == 16);
    CHECK(r16.graph.graph.degree(r16.t) == 15);

    CHECK_THROWS_AS(relaxed_sp(1), contract_error);

    for (int n = 2; n <= 64; ++n) {
        auto r = relaxed_sp(n);
        CHECK(r.graph.graph.vertex_count() == n);
        CHECK(eccentricity(r.graph.graph, r.t) <= 1);
    }
}

TEST_CASE("accelerated binomial") {
    auto ab1 = accelerated_binomial(1);
    // a triangle: no shortcut added
    CHECK(ab1.graph.graph.vertex_count() == 3);
    CHECK(ab1.graph.graph.edge_count() == 3);
    CHECK(ab1.shortcuts.empty());

    auto ab2 = accelerated_binomial(2);
    CHECK(ab2.graph.graph.vertex_count() == 5);
    CHECK(ab2.shortcuts.size() == 1);

    auto ab3 = accelerated_binomial(3);
    CHECK(ab3.shortcuts.size() == 4);

    auto ab6 = accelerated_binomial(6);
    CHECK(ab6.graph.graph.vertex_count() == 65);
    int maxlab = 0;
    for (auto& [v, d] : ab6.graph.dist_label)
        if (v != ab6.t) maxlab = std::max(maxlab, d);
    CHECK(maxlab == 2);
}

TEST_CASE("accelerated binomial label chains") {
    for (int k = 0; k <= 8; ++k) {
        auto ab = accelerated_binomial_minus_t(k);
        const Graph& g = ab.graph.graph;
        int cap = (k + 2) / 3;
        for (int v = 0; v < g.vertex_count(); ++v) {
            CHECK(ab.label[v] <= cap);
            int cur = v, steps = 0;
            while (cur != ab.s) {
                int nxt = ab.chain_next[cur];
                REQUIRE(nxt >= 0);
                REQUIRE(g.has_edge(cur, nxt));
                REQUIRE(ab.label[nxt] == ab.label[cur] - 1);
                cur = nxt;
                ++steps;
            }
            CHECK(steps == ab.label[v]);
        }
    }
}

TEST_CASE("planar broadcast family") {
    auto pb4 = planar_broadcast(4);
    CHECK(pb4.graph.graph.vertex_count() == 12);
    auto pb8 = planar_broadcast(8);
    CHECK(pb8.graph.graph.vertex_count() == 160);
    auto pb7 = planar_broadcast(7, 70);
    CHECK(pb7.graph.graph.vertex_count() == 70);
    CHECK(is_connected(pb7.graph.graph));
    CHECK_THROWS_AS(planar_broadcast(1), contract_error);
    CHECK_THROWS_AS(planar_broadcast(7, 64), contract_error);

    for (int k = 2; k <= 10; ++k)
        CHECK(planar_broadcast(k).graph.graph.vertex_count() ==
              (1 << (k - 1)) + (1 << ((3 * k) / 4 - 1)));
}

TEST_CASE("k3 random sp") {
    auto k0 = k3_random_sp(0, 1);
    CHECK(k0.graph.graph.vertex_count() == 3);
    CHECK(k0.graph.graph.edge_count() == 3);

    auto g = k3_random_sp(50, 7);
    CHECK(is_biconnected(g.graph.graph));
    CHECK(g.log.size() == 50);

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto a = k3_random_sp(30, seed);
        CHECK(a.graph.graph.min_degree() <= 2);
        // determinism
        auto b = k3_random_sp(30, seed);
        CHECK(a.graph.graph.edges() == b.graph.graph.edges());
    }
}

TEST_CASE("family constructors are deterministic") {
    for (int rep = 0; rep < 2; ++rep) {
        CHECK(graph_to_json_text(mirrored_binomial(6).graph) ==
              graph_to_json_text(mirrored_binomial(6).graph));
        CHECK(graph_to_json_text(planar_broadcast(6).graph) ==
              graph_to_json_text(planar_broadcast(6).graph));
        CHECK(graph_to_json_text(k3_random_sp(40, 11).graph) ==
              graph_to_json_text(k3_random_sp(40, 11).graph));
    }
}

TEST_CASE("family counts across validity ranges") {
    for (int k = 0; k <= 10; ++k) {
        CHECK(binomial_tree(k).graph.graph.vertex_count() == (1 << k));
        CHECK(binomial_sp_composed(k).graph.graph.vertex_count() == (1 << k) + 1);
        CHECK(accelerated_binomial(k).graph.graph.vertex_count() == (1 << k) + 1);
    }
}

TEST_CASE("eb and pb trims preserve connectivity and roles") {
    for (int k : {4, 5, 6}) {
        int full_eb = (1 << (k - 1)) + (1 << (k / 2));
        for (int n = (1 << (k - 1)) + 1; n <= full_eb; n += 2) {
            auto eb = extended_binomial(k, n);
            CHECK(eb.graph.graph.vertex_count() == n);
            CHECK(is_connected(eb.graph.graph));
            CHECK(eb.graph.role_vertex(Role::s).has_value());
            CHECK(eb.graph.role_vertex(Role::t).has_value());
        }
        int full_pb = (1 << (k - 1)) + (1 << ((3 * k) / 4 - 1));
        for (int n = (1 << (k - 1)) + 1; n <= full_pb; n += 2) {
            auto pb = planar_broadcast(k, n);
            CHECK(pb.graph.graph.vertex_count() == n);
            CHECK(is_connected(pb.graph.graph));
        }
    }
}

TEST_CASE("recognizers round trip") {
    CHECK(recognize_bt(binomial_tree(4).graph).has_value());
    CHECK(recognize_mb(mirrored_binomial(5).graph).has_value());
    CHECK(recognize_composed(binomial_sp_composed(3).graph).has_value());
    CHECK(recognize_composed(extended_binomial(5, 20).graph).has_value());
    CHECK(recognize_composed(planar_broadcast(5).graph).has_value());
    CHECK(recognize_rb(relaxed_sp(23).graph).has_value());
    CHECK(recognize_ab(accelerated_binomial(4).graph, false).has_value());
    CHECK(recognize_ab(accelerated_binomial_minus_t(4).graph, true).has_value());

    CHECK_FALSE(recognize_mb(binomial_tree(3).graph).has_value());
    CHECK_FALSE(recognize_bt(mirrored_binomial(2).graph).has_value());
    CHECK_FALSE(recognize_rb(binomial_sp_composed(3).graph).has_value());
}
