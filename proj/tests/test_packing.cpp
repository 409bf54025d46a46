#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "extremal/oracle.hpp"
#include "extremal/packing.hpp"
#include "gen.hpp"

using namespace extremal;

namespace {

// count distinct image edges of both placements, straight from the maps
std::set<Edge> image_edges(const Graph& g1, const Graph& g2, const Placement& pl) {
    std::set<Edge> es;
    for (auto [a, b] : g1.edges())
        es.insert(norm_edge(pl.f1[std::size_t(a)], pl.f1[std::size_t(b)]));
    for (auto [a, b] : g2.edges())
        es.insert(norm_edge(pl.f2[std::size_t(a)], pl.f2[std::size_t(b)]));
    return es;
}

} // namespace

TEST_CASE("ball-size threshold values") {
    CHECK(max_k_bound(2, 2, 100) == 3);
    CHECK(max_k_bound(2, 2, 1000) == 5);
    CHECK(max_k_bound(1, 1, 10) == 4);
    // the inequality is strict: 1 + 4 + 12 == 17 disqualifies k = 2
    CHECK(max_k_bound(2, 2, 17) == 1);
    // direct re-summation for a row of small cases
    for (int d = 2; d <= 5; ++d)
        for (long long n : {20LL, 57LL, 300LL}) {
            int k = max_k_bound(d, d, n);
            long long sum = 1, pow = 2 * d;
            int j = 0;
            while (j < k) {
                sum += pow;
                pow *= 2 * d - 1;
                ++j;
            }
            CHECK(sum < n);
            CHECK(sum + pow >= n);
        }
}

TEST_CASE("conflict elimination yields disjoint images") {
    SECTION("guaranteed regime") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Graph g1 = testgen::random_bounded_degree_graph(40, 3, 30, 900 + seed);
            Graph g2 = testgen::random_bounded_degree_graph(40, 3, 30, 1900 + seed);
            REQUIRE(2 * g1.max_degree() * g2.max_degree() < 40);
            Placement pl = sauer_spencer_pack(g1, g2, seed);
            CHECK(image_edges(g1, g2, pl).size() == g1.m() + g2.m());
        }
    }
    SECTION("single-edge toy") {
        Graph e1(4, {{0, 1}});
        Graph e2(4, {{2, 3}});
        Placement pl = sauer_spencer_pack(e1, e2, 1);
        CHECK(image_edges(e1, e2, pl).size() == 2);
    }
    SECTION("empty first graph packs as anything") {
        Graph none(9, {});
        Graph any = Graph::cycle(9);
        Placement pl = sauer_spencer_pack(none, any, 5);
        CHECK(image_edges(none, any, pl).size() == 9);
    }
    SECTION("outside the guarantee the hint fires") {
        Graph c8 = Graph::cycle(8);
        CHECK_THROWS_AS(sauer_spencer_pack(c8, c8, 3), PackingInfeasibleHint);
        // ... but the best-effort pipeline still finds the decomposition
        PackResult res = pack_high_girth(c8, c8, 3);
        CHECK(res.combined.edge_disjoint);
        CHECK(res.combined.host.m() == 16);
    }
}

TEST_CASE("pack_high_girth certifies its target") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Graph g1 = testgen::random_bounded_degree_graph(60, 2, 40, 100 + seed);
        Graph g2 = testgen::random_bounded_degree_graph(60, 2, 40, 200 + seed);
        PackResult res = pack_high_girth(g1, g2, seed);
        CHECK(res.girth_achieved >= IntOrInf(res.target));
        CHECK(res.combined.edge_disjoint);
        // degree bound of the union
        CHECK(res.combined.host.max_degree() <= g1.max_degree() + g2.max_degree());
    }
}

TEST_CASE("girth improvement makes strict lexicographic progress") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g1 = testgen::random_bounded_degree_graph(50, 2, 35, 300 + seed);
        Graph g2 = testgen::random_bounded_degree_graph(50, 2, 35, 400 + seed);
        PackResult res = pack_high_girth(g1, g2, seed);
        const auto& steps = res.trace.steps;
        for (std::size_t i = 1; i < steps.size(); ++i) {
            bool lex_less = steps[i].deficit < steps[i - 1].deficit ||
                            (steps[i].deficit == steps[i - 1].deficit &&
                             steps[i].cycle_count < steps[i - 1].cycle_count);
            CHECK(lex_less);
        }
        CHECK(res.trace.iterations() < std::size_t(50));
    }
}

TEST_CASE("two cycle copies reach the certified girth") {
    Graph c100 = Graph::cycle(100);
    PackResult res = pack_high_girth(c100, c100, 7);
    CHECK(res.k == 3);
    CHECK(res.target == 3);
    CHECK(res.girth_achieved >= IntOrInf(3));
    CHECK(res.combined.host.m() == 200);
}

TEST_CASE("forest inputs only need the ball bound") {
    // perfect matchings: girth is infinite, so the certificate is girth >= k
    EdgeList m;
    for (int i = 0; i < 25; ++i) m.push_back({2 * i, 2 * i + 1});
    Graph pm(50, m);
    int k = max_k_bound(1, 1, 50);
    PackResult res = pack_high_girth(pm, pm, 11);
    CHECK(res.k == k);
    CHECK(res.target == k);
    CHECK((res.girth_achieved.is_infinite() || res.girth_achieved >= IntOrInf(k)));
}

TEST_CASE("combined girth agrees with the exhaustive oracle on small hosts") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Graph g1 = testgen::random_bounded_degree_graph(12, 2, 7, 500 + seed);
        Graph g2 = testgen::random_bounded_degree_graph(12, 2, 7, 600 + seed);
        PackResult res = pack_high_girth(g1, g2, seed);
        CHECK(res.girth_achieved == exact_girth(res.combined.host));
    }
}

TEST_CASE("cycle counting on fixed graphs") {
    CHECK(count_cycles_of_length(Graph::cycle(6), 6) == 1);
    CHECK(count_cycles_of_length(Graph::cycle(6), 3) == 0);
    CHECK(count_cycles_of_length(Graph::complete(4), 3) == 4);
    CHECK(count_cycles_of_length(Graph::complete(4), 4) == 3);
}

TEST_CASE("hamilton union stacks certified layers") {
    SECTION("single layer is just the ring") {
        HamiltonUnionResult res = hamilton_union_high_girth(100, 1, 3);
        CHECK(res.layers.size() == 1);
        CHECK(res.host.m() == 100);
        CHECK(res.girth_achieved == IntOrInf(100));
    }
    SECTION("two layers on a modest ring") {
        HamiltonUnionResult res = hamilton_union_high_girth(120, 2, 9);
        REQUIRE(res.layers.size() == 2);
        for (const EdgeList& layer : res.layers) {
            Graph lg(res.host.n(), layer);
            CHECK(lg.m() == 120);
            CHECK(lg.min_degree() == 2);
            CHECK(lg.max_degree() == 2);
            CHECK(is_connected(lg));
            for (auto [u, v] : layer) CHECK(res.host.has_edge(u, v));
        }
        CHECK(res.host.m() == 240); // layers are edge-disjoint
        CHECK(girth(res.host) >= IntOrInf(res.claimed_girth));
    }
    SECTION("three layers, degree bookkeeping") {
        HamiltonUnionResult res = hamilton_union_high_girth(200, 3, 4);
        CHECK(res.layers.size() == 3);
        CHECK(res.host.m() == 600);
        CHECK(res.host.max_degree() == 6);
        CHECK(res.host.min_degree() == 6);
        CHECK(girth(res.host) >= IntOrInf(res.claimed_girth));
    }
    SECTION("infeasible parameters refuse up front") {
        CHECK_THROWS_AS(hamilton_union_high_girth(16, 3, 1), InfeasibleParameters);
    }
}
