#include <catch2/catch_amalgamated.hpp>

#include "bcast/families.hpp"
#include "bcast/graph.hpp"
#include "bcast/json_io.hpp"

using namespace bcast;

namespace {

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, e);
}

Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, e);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make_graph(n, e);
}

}  // namespace

TEST_CASE("make_graph basics") {
    auto g = make_graph(1, {});
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);

    auto p4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(p4.edge_count() == 3);
    CHECK(p4.degree(1) == 2);

    CHECK_THROWS_AS(make_graph(4, {{0, 1}, {0, 1}}), contract_error);
    CHECK_THROWS_AS(make_graph(4, {{0, 1}, {1, 0}}), contract_error);  // same pair reversed
    CHECK_THROWS_AS(make_graph(3, {{0, 3}}), contract_error);
    CHECK_THROWS_AS(make_graph(3, {{2, 2}}), contract_error);
}

TEST_CASE("make_graph error names the offending pair") {
    try {
        make_graph(4, {{1, 3}, {3, 1}});
        FAIL("expected contract_error");
    } catch (const contract_error& e) {
        CHECK(std::string(e.what()).find("{1,3}") != std::string::npos);
    }
}

TEST_CASE("bfs_distances on family graphs") {
    auto mb4 = mirrored_binomial(4);
    auto d = bfs_distances(mb4.graph.graph, mb4.s);
    REQUIRE(d[mb4.t].has_value());
    CHECK(*d[mb4.t] == 5);
    CHECK(*d[mb4.s_prime] == 1);
    CHECK(*d[mb4.t_prime] == 4);

    auto bt3 = binomial_tree(3);
    auto db = bfs_distances(bt3.graph.graph, 0);
    int mx = 0;
    for (auto& x : db) mx = std::max(mx, *x);
    CHECK(mx == 3);
}

TEST_CASE("bfs_distances reports unreachable explicitly") {
    auto g = make_graph(3, {{0, 1}});
    auto d = bfs_distances(g, 0);
    CHECK(d[1].has_value());
    CHECK_FALSE(d[2].has_value());
}

TEST_CASE("bfs distance properties") {
    auto g = mirrored_binomial(5).graph.graph;
    int n = g.vertex_count();
    std::vector<std::vector<int>> dist;
    for (int v = 0; v < n; ++v) {
        auto row = bfs_distances(g, v);
        std::vector<int> r;
        for (auto& x : row) r.push_back(*x);
        dist.push_back(std::move(r));
        CHECK(dist[v][v] == 0);
    }
    // triangle inequality on sampled triples
    detail::SplitMix64 rng(13);
    for (int it = 0; it < 500; ++it) {
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        int c = static_cast<int>(rng.below(n));
        CHECK(dist[a][c] <= dist[a][b] + dist[b][c]);
    }
}

TEST_CASE("is_biconnected") {
    CHECK(is_biconnected(cycle_graph(8)));
    CHECK_FALSE(is_biconnected(path_graph(4)));
    CHECK_THROWS_AS(is_biconnected(path_graph(2)), contract_error);
    CHECK(is_biconnected(k3_random_sp(50, 7).graph.graph));
    // disconnected
    CHECK_FALSE(is_biconnected(make_graph(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("is_isomorphic") {
    CHECK(is_isomorphic(binomial_tree(2).graph.graph, path_graph(4)));
    CHECK(is_isomorphic(mirrored_binomial(3).graph.graph, cycle_graph(8)));
    CHECK_FALSE(is_isomorphic(complete_graph(3), path_graph(3)));
    CHECK_THROWS_AS(is_isomorphic(cycle_graph(21), cycle_graph(21)), capability_error);
}

TEST_CASE("simplify") {
    Multigraph mg;
    mg.n = 2;
    mg.add_edge(0, 1);
    mg.add_edge(0, 1);
    auto g = simplify(mg);
    CHECK(g.edge_count() == 1);

    // idempotence on random multigraphs
    detail::SplitMix64 rng(99);
    for (int it = 0; it < 50; ++it) {
        Multigraph m;
        m.n = 6;
        int edges = 1 + static_cast<int>(rng.below(12));
        for (int i = 0; i < edges; ++i) {
            int a = static_cast<int>(rng.below(6));
            int b = static_cast<int>(rng.below(6));
            if (a != b) m.add_edge(a, b);
        }
        Graph once = simplify(m);
        Multigraph again;
        again.n = once.vertex_count();
        for (const Edge& e : once.edges()) again.add_edge(e.u, e.v);
        Graph twice = simplify(again);
        CHECK(once.edges() == twice.edges());
    }
}

TEST_CASE("parallel composition of two B_1 collapses the duplicate terminal edge") {
    auto b1 = binomial_sp_composed(1);
    auto composed = compose_parallel(b1.graph, b1.graph);
    CHECK(composed.graph.vertex_count() == 4);
    CHECK(composed.graph.edge_count() == 5);
}

TEST_CASE("json round trip is byte identical") {
    std::vector<LabeledGraph> graphs;
    graphs.push_back(binomial_tree(4).graph);
    graphs.push_back(mirrored_binomial(4).graph);
    graphs.push_back(binomial_sp_composed(3).graph);
    graphs.push_back(extended_binomial(4, 10).graph);
    graphs.push_back(relaxed_sp(13).graph);
    graphs.push_back(accelerated_binomial(4).graph);
    graphs.push_back(planar_broadcast(5).graph);
    graphs.push_back(k3_random_sp(25, 3).graph);
    for (const auto& g : graphs) {
        std::string t1 = graph_to_json_text(g);
        LabeledGraph parsed = graph_from_json_text(t1);
        std::string t2 = graph_to_json_text(parsed);
        CHECK(t1 == t2);
    }
}

TEST_CASE("json rejects malformed input") {
    CHECK_THROWS_AS(graph_from_json_text("{"), contract_error);
    CHECK_THROWS_AS(graph_from_json_text(R"({"n": 2})"), contract_error);
    CHECK_THROWS_AS(graph_from_json_text(R"({"n": 2, "edges": [[0,5]], "roles": {}})"),
                    contract_error);
    CHECK_THROWS_AS(graph_from_json_text(R"({"n": 2, "edges": [[0,1]], "roles": {"x": 0}})"),
                    contract_error);
}

TEST_CASE("dot export marks terminals and shortcut edges") {
    auto ab = accelerated_binomial(2);
    std::string dot = graph_to_dot(ab.graph, "ab2");
    CHECK(dot.find("graph ab2 {") == 0);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("color=red") != std::string::npos);
}

TEST_CASE("SP-flagged family instances keep a low-degree vertex") {
    // series-extension endpoints have only two neighbors
    std::vector<Graph> sp_instances;
    for (int k = 2; k <= 6; ++k) sp_instances.push_back(mirrored_binomial(k).graph.graph);
    for (int k = 0; k <= 5; ++k) sp_instances.push_back(binomial_sp_composed(k).graph.graph);
    for (int k = 2; k <= 6; ++k) sp_instances.push_back(extended_binomial(k).graph.graph);
    for (int n : {5, 9, 17, 33}) sp_instances.push_back(relaxed_sp(n).graph.graph);
    for (int s : {0, 10, 30}) sp_instances.push_back(k3_random_sp(s, 5).graph.graph);
    for (const auto& g : sp_instances) {
        if (g.vertex_count() < 3) continue;
        CHECK(g.min_degree() <= 2);
    }
}
