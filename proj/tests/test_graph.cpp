#include <catch2/catch_amalgamated.hpp>

#include "extremal/graph.hpp"
#include "gen.hpp"

using namespace extremal;

TEST_CASE("edge normalization and basic accessors") {
    Graph g(4, {{2, 0}, {1, 3}, {3, 0}});
    CHECK(g.n() == 4);
    CHECK(g.m() == 3);
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0)); // order must not matter
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.degree(0) == 2);
    CHECK(g.degree(3) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.min_degree() == 1);
    // stored edges come out sorted with u < v
    for (auto [u, v] : g.edges()) CHECK(u < v);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), PreconditionError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), PreconditionError); // repeated edge
}

TEST_CASE("girth on fixed graphs") {
    CHECK(girth(Graph::complete(3)) == IntOrInf(3));
    CHECK(girth(Graph::complete(4)) == IntOrInf(3));
    CHECK(girth(Graph::cycle(7)) == IntOrInf(7));
    Graph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(girth(path).is_infinite());
    CHECK(girth(testgen::petersen()) == IntOrInf(5));
}

TEST_CASE("girth cap still detects short cycles") {
    // cycles of length >= cap are ignored; anything shorter is found
    Graph c8 = Graph::cycle(8);
    CHECK(girth(c8, IntOrInf(4)).is_infinite());
    Graph k4 = Graph::complete(4);
    CHECK(girth(k4, IntOrInf(3)).is_infinite()); // the triangle sits at the cap
    CHECK(girth(k4, IntOrInf(4)) == IntOrInf(3));
    CHECK(girth(c8, IntOrInf(9)) == IntOrInf(8));
}

TEST_CASE("shortest_cycle picks the canonical witness") {
    auto c5 = shortest_cycle(Graph::cycle(5));
    REQUIRE(c5.has_value());
    CHECK(c5->vertices.size() == 5);
    CHECK(c5->valid_in(Graph::cycle(5)));

    Graph forest(4, {{0, 1}, {2, 3}});
    CHECK_FALSE(shortest_cycle(forest).has_value());

    // two disjoint triangles: tie broken toward the lex-smaller one
    Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    auto c = shortest_cycle(two);
    REQUIRE(c.has_value());
    std::vector<int> sorted = c->vertices;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2});
}

TEST_CASE("bfs distances") {
    auto d = bfs_distances(Graph::cycle(6), 0);
    std::vector<long long> got;
    for (const auto& x : d) got.push_back(x.value());
    CHECK(got == std::vector<long long>{0, 1, 2, 3, 2, 1});

    auto dk = bfs_distances(Graph::complete(4), 0);
    CHECK(dk[0] == IntOrInf(0));
    for (int v = 1; v < 4; ++v) CHECK(dk[std::size_t(v)] == IntOrInf(1));

    Graph two_edges(4, {{0, 1}, {2, 3}});
    auto dd = bfs_distances(two_edges, 0);
    CHECK(dd[2].is_infinite());
    CHECK(dd[3].is_infinite());
}

TEST_CASE("components and domination") {
    Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}}); // K3 + K2
    CHECK(connected_components(g).size() == 2);
    CHECK_FALSE(is_connected(g));
    CHECK(is_connected(Graph::cycle(4)));
    CHECK(connected_components(Graph(4, {})).size() == 4);

    CHECK(is_dominating(Graph::cycle(4), {0, 2}));
    CHECK_FALSE(is_dominating(Graph::cycle(6), {0}));
    CHECK(is_dominating(Graph::cycle(6), {0, 1, 2, 3, 4, 5}));

    auto comps = induced_components(Graph::cycle(6), {0, 1, 3});
    CHECK(comps.size() == 2); // {0,1} and {3}
}

TEST_CASE("digraph accessors") {
    Digraph d(4, {{0, 1}, {0, 2}, {1, 2}, {3, 0}});
    CHECK(d.n() == 4);
    CHECK(d.arc_count() == 4);
    CHECK(d.out_degree(0) == 2);
    CHECK(d.out_degree(2) == 0);
    CHECK(d.min_out_degree() == 0);
    CHECK(d.has_arc(3, 0));
    CHECK_FALSE(d.has_arc(0, 3));
    CHECK(d.out_neighbors(0) == std::vector<int>{1, 2});
}

TEST_CASE("girth agrees with a straight edge-count argument on random graphs") {
    // a graph with n vertices and >= n edges has a cycle; forests have none
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Graph g = testgen::random_graph(9, 0.3, 1000 + seed);
        bool has_cycle = girth(g).is_finite();
        std::size_t tree_bound = 0;
        for (const auto& comp : connected_components(g)) tree_bound += comp.size() - 1;
        if (g.m() > tree_bound) CHECK(has_cycle);
        if (!has_cycle) CHECK(g.m() == tree_bound);
    }
}
