#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "extremal/coalition.hpp"
#include "gen.hpp"

using namespace extremal;

namespace {

bool splits_coalition(const CoalitionInstance& inst, const Partition& parts) {
    int part_of_0 = -1;
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (int v : parts[p]) {
            if (v == 0) part_of_0 = (int)p;
        }
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (int v : parts[p])
            if (v > 0 && v < inst.r && (int)p != part_of_0) return true;
    return false;
}

bool cycles_disjoint(const Cycle& a, const Cycle& b) {
    std::set<int> va(a.vertices.begin(), a.vertices.end());
    for (int v : b.vertices)
        if (va.count(v)) return false;
    return true;
}

} // namespace

TEST_CASE("instance validation") {
    CoalitionInstance good = testgen::random_coalition_instance(3, 5, 8, 1);
    CHECK_NOTHROW(validate_instance(good, true));
    // unfilled lists outside the coalition are fine only when partial is allowed
    CHECK_THROWS_AS(validate_instance(good, false), PreconditionError);

    CoalitionInstance bad = good;
    bad.choices[2] = {};
    CHECK_THROWS_AS(validate_instance(bad, true), PreconditionError);

    bad = good;
    bad.choices[0] = {1, 2};
    CHECK_THROWS_AS(validate_instance(bad, true), PreconditionError); // wrong size
    bad.choices[0] = {0, 1, 2};
    CHECK_THROWS_AS(validate_instance(bad, true), PreconditionError); // lists itself
    bad.choices[0] = {2, 1, 3};
    CHECK_THROWS_AS(validate_instance(bad, true), PreconditionError); // unsorted
    bad.choices[0] = {1, 2, 8};
    CHECK_THROWS_AS(validate_instance(bad, true), PreconditionError); // out of range

    bad = good;
    bad.n = 3; // n < k+1
    bad.choices.resize(3);
    CHECK_THROWS_AS(validate_instance(bad, true), PreconditionError);
}

TEST_CASE("winning lists for one and two friends") {
    SECTION("shape of the constructions") {
        CoalitionInstance c1 = coalition_construct(1, 4, 7);
        CHECK(c1.choices[0] == std::vector<int>{1});
        CHECK(c1.choices[3] == std::vector<int>{0});
        CHECK(c1.choices[4].empty());

        CoalitionInstance c2 = coalition_construct(2, 5, 8);
        CHECK(c2.choices[0] == std::vector<int>{1, 2});
        CHECK(c2.choices[1] == std::vector<int>{0, 2});
        CHECK(c2.choices[2] == std::vector<int>{0, 1});
        CHECK(c2.choices[4] == std::vector<int>{0, 1});
    }
    SECTION("they beat even the adversarial teacher") {
        for (int r = 2; r <= 4; ++r)
            for (int n = std::max(3, r); n <= 7; ++n) {
                for (int k = 1; k <= 2; ++k) {
                    if (n < k + 1 || n < r) continue;
                    CoalitionInstance inst = coalition_construct(k, r, n);
                    SuccessReport rep = verify_coalition_success(inst, SuccessMode::adversarial);
                    INFO("k=" << k << " r=" << r << " n=" << n);
                    CHECK(rep.success);
                    CHECK_FALSE(rep.witness_parts.has_value());
                    // weaker fixed-completion adversary certainly loses too
                    CHECK(verify_coalition_success(inst, SuccessMode::fixed_completion).success);
                }
            }
    }
    SECTION("parameter guards") {
        CHECK_THROWS_AS(coalition_construct(3, 5, 9), InfeasibleParameters);
        CHECK_THROWS_AS(coalition_construct(1, 1, 5), InfeasibleParameters);
        CHECK_THROWS_AS(coalition_construct(2, 5, 4), InfeasibleParameters);
    }
    SECTION("a careless single-friend coalition can still lose") {
        // 0 and 1 each befriend an outsider instead of each other
        CoalitionInstance inst;
        inst.n = 5;
        inst.k = 1;
        inst.r = 2;
        inst.choices = {{2}, {3}, {}, {}, {}};
        SuccessReport rep = verify_coalition_success(inst, SuccessMode::adversarial);
        CHECK_FALSE(rep.success);
        REQUIRE(rep.witness_parts.has_value());
        REQUIRE(rep.witness_instance.has_value());
        CHECK(verify_partition(*rep.witness_instance, *rep.witness_parts));
        CHECK(splits_coalition(inst, *rep.witness_parts));
    }
}

TEST_CASE("predecessor completion") {
    CoalitionInstance inst = testgen::random_coalition_instance(3, 5, 8, 3);
    CoalitionInstance full = acyclic_completion(inst);
    CHECK(full.choices[5] == std::vector<int>{2, 3, 4});
    CHECK(full.choices[6] == std::vector<int>{3, 4, 5});
    CHECK(full.choices[7] == std::vector<int>{4, 5, 6});
    CHECK(completion_is_acyclic(full));
    CHECK_NOTHROW(validate_instance(full, false));

    SECTION("already filled lists are kept") {
        CoalitionInstance pre = inst;
        pre.choices[6] = {0, 1, 2};
        CoalitionInstance full2 = acyclic_completion(pre);
        CHECK(full2.choices[6] == std::vector<int>{0, 1, 2});
        CHECK(full2.choices[5] == std::vector<int>{2, 3, 4});
    }
    SECTION("cyclic outside lists are detected") {
        CoalitionInstance cyc = inst;
        cyc.choices[5] = {0, 6, 7};
        cyc.choices[6] = {0, 5, 7};
        cyc.choices[7] = {0, 5, 6};
        CHECK_FALSE(completion_is_acyclic(cyc));
    }
    SECTION("needs a coalition at least as big as the lists") {
        CoalitionInstance small = testgen::random_coalition_instance(3, 2, 6, 4);
        CHECK_THROWS_AS(acyclic_completion(small), InfeasibleParameters);
    }
}

TEST_CASE("choice digraph") {
    CoalitionInstance full = acyclic_completion(testgen::random_coalition_instance(3, 5, 8, 9));
    Digraph d = choice_digraph(full);
    CHECK(d.n() == 8);
    CHECK(d.min_out_degree() == 3);
    for (int v = 0; v < 8; ++v) {
        std::vector<int> outs = d.out_neighbors(v);
        std::sort(outs.begin(), outs.end());
        CHECK(outs == full.choices[std::size_t(v)]);
    }
    CoalitionInstance partial = testgen::random_coalition_instance(3, 5, 8, 9);
    CHECK_THROWS_AS(choice_digraph(partial), PreconditionError);
}

TEST_CASE("disjoint cycle search") {
    SECTION("two planted triangles") {
        Digraph d(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 0}, {2, 6}});
        auto [a, b] = find_two_disjoint_cycles(d);
        CHECK(a.valid_in(d));
        CHECK(b.valid_in(d));
        CHECK(cycles_disjoint(a, b));
    }
    SECTION("complete digraph returns the two lex-first 2-cycles") {
        std::vector<std::pair<int, int>> arcs;
        for (int u = 0; u < 6; ++u)
            for (int v = 0; v < 6; ++v)
                if (u != v) arcs.push_back({u, v});
        auto [a, b] = find_two_disjoint_cycles(Digraph(6, arcs));
        CHECK(a.vertices == std::vector<int>{0, 1});
        CHECK(b.vertices == std::vector<int>{2, 3});
    }
    SECTION("random outdegree-3 digraphs always contain a pair") {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            SplitMix64 rng(4000 + seed);
            std::vector<std::pair<int, int>> arcs;
            int n = 10;
            for (int v = 0; v < n; ++v) {
                std::vector<int> pool;
                for (int u = 0; u < n; ++u)
                    if (u != v) pool.push_back(u);
                rng.shuffle(pool);
                for (int t = 0; t < 3; ++t) arcs.push_back({v, pool[std::size_t(t)]});
            }
            Digraph d(n, arcs);
            auto [a, b] = find_two_disjoint_cycles(d);
            CHECK(a.valid_in(d));
            CHECK(b.valid_in(d));
            CHECK(cycles_disjoint(a, b));
        }
    }
    SECTION("a single directed cycle has no pair") {
        Digraph ring(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
        CHECK_THROWS_AS(find_two_disjoint_cycles(ring), NotFound);
    }
}

TEST_CASE("partition verification") {
    CoalitionInstance full = acyclic_completion(testgen::random_coalition_instance(3, 5, 8, 21));
    SECTION("everyone together always qualifies") {
        Partition all_in_one = {{0, 1, 2, 3, 4, 5, 6, 7}};
        CHECK(verify_partition(full, all_in_one));
    }
    SECTION("a singleton part strands its member") {
        Partition strand = {{0}, {1, 2, 3, 4, 5, 6, 7}};
        CHECK_FALSE(verify_partition(full, strand));
    }
    SECTION("malformed partitions throw rather than answer") {
        CHECK_THROWS_AS(verify_partition(full, {{0, 1, 2, 3, 4, 5, 6, 7}, {}}),
                        MalformedPartition);
        CHECK_THROWS_AS(verify_partition(full, {{0, 1, 2, 3}, {3, 4, 5, 6, 7}}),
                        MalformedPartition);
        CHECK_THROWS_AS(verify_partition(full, {{0, 1, 2, 3}, {4, 5, 6}}), MalformedPartition);
        CHECK_THROWS_AS(verify_partition(full, {{0, 1, 2, 3}, {4, 5, 6, 7, 8}}),
                        MalformedPartition);
    }
}

TEST_CASE("breaking a three-friend coalition") {
    for (auto [k, r, n, seed] : {std::tuple<int, int, int, std::uint64_t>{3, 5, 8, 11},
                                 {3, 3, 8, 12},
                                 {3, 5, 10, 13},
                                 {4, 6, 12, 14},
                                 {4, 4, 9, 15}}) {
        CoalitionInstance inst = testgen::random_coalition_instance(k, r, n, seed);
        BreakResult res = break_coalition(inst);
        INFO("k=" << k << " r=" << r << " n=" << n);
        REQUIRE(res.parts.size() == 2);
        CHECK(verify_partition(res.completed, res.parts));
        CHECK(splits_coalition(inst, res.parts));
        CHECK(res.completed.n == n);
        CHECK_NOTHROW(validate_instance(res.completed, false));
        // coalition lists are untouched
        for (int i = 0; i < r; ++i)
            CHECK(res.completed.choices[std::size_t(i)] == inst.choices[std::size_t(i)]);
        Digraph d = choice_digraph(res.completed);
        CHECK(res.cycle_a.valid_in(d));
        CHECK(res.cycle_b.valid_in(d));
        CHECK(cycles_disjoint(res.cycle_a, res.cycle_b));
    }
    SECTION("prefilled acyclic lists are honored") {
        CoalitionInstance full = acyclic_completion(testgen::random_coalition_instance(3, 5, 9, 33));
        BreakResult res = break_coalition(full);
        for (int j = 5; j < 9; ++j)
            CHECK(res.completed.choices[std::size_t(j)] == full.choices[std::size_t(j)]);
    }
    SECTION("prefilled cyclic lists are replaced") {
        CoalitionInstance cyc = testgen::random_coalition_instance(3, 5, 8, 44);
        cyc.choices[5] = {0, 6, 7};
        cyc.choices[6] = {0, 5, 7};
        cyc.choices[7] = {0, 5, 6};
        BreakResult res = break_coalition(cyc);
        CHECK(completion_is_acyclic(res.completed));
        CHECK(verify_partition(res.completed, res.parts));
    }
    SECTION("guards") {
        CHECK_THROWS_AS(break_coalition(coalition_construct(2, 5, 8)), PreconditionError);
        CHECK_THROWS_AS(break_coalition(testgen::random_coalition_instance(4, 3, 9, 5)),
                        InfeasibleParameters);
    }
}

TEST_CASE("exhaustive game decision") {
    SECTION("three-friend coalitions of five always fail") {
        for (int n = 5; n <= 8; ++n)
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                CoalitionInstance inst = testgen::random_coalition_instance(3, 5, n, 100 + seed);
                SuccessReport rep = verify_coalition_success(inst, SuccessMode::adversarial);
                INFO("n=" << n << " seed=" << seed);
                CHECK_FALSE(rep.success);
                REQUIRE(rep.witness_parts.has_value());
                REQUIRE(rep.witness_instance.has_value());
                CHECK(verify_partition(*rep.witness_instance, *rep.witness_parts));
                CHECK(splits_coalition(inst, *rep.witness_parts));
                // the materialized lists keep the coalition's own choices
                for (int i = 0; i < 5; ++i)
                    CHECK(rep.witness_instance->choices[std::size_t(i)] ==
                          inst.choices[std::size_t(i)]);
            }
    }
    SECTION("full enumerations touch every set partition") {
        CoalitionInstance inst = coalition_construct(1, 2, 5);
        CHECK(verify_coalition_success(inst).partitions_checked == 52); // Bell(5)
        CoalitionInstance inst6 = coalition_construct(2, 3, 6);
        CHECK(verify_coalition_success(inst6).partitions_checked == 203); // Bell(6)
    }
    SECTION("adversarial success implies fixed-completion success") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            int k = 1 + int(seed % 3);
            // fixed-completion needs r >= k to fill the outside lists
            int r = std::max(k, 2 + int(seed % 4));
            int n = std::max(k + 1, r) + 1 + int(seed % 2);
            CoalitionInstance inst = testgen::random_coalition_instance(k, r, n, 600 + seed);
            SuccessReport adv = verify_coalition_success(inst, SuccessMode::adversarial);
            SuccessReport fix = verify_coalition_success(inst, SuccessMode::fixed_completion);
            INFO("k=" << k << " r=" << r << " n=" << n << " seed=" << seed);
            if (adv.success) CHECK(fix.success);
            if (!fix.success) {
                CHECK_FALSE(adv.success);
                REQUIRE(fix.witness_instance.has_value());
                CHECK(verify_partition(*fix.witness_instance, *fix.witness_parts));
            }
        }
    }
    SECTION("size guard") {
        CoalitionInstance big = coalition_construct(1, 2, 11);
        CHECK_THROWS_AS(verify_coalition_success(big), TooLarge);
    }
}

TEST_CASE("random split experiment") {
    CoalitionInstance inst = testgen::random_coalition_instance(3, 5, 8, 77);
    SECTION("deterministic per seed, order-independent counting") {
        MonteCarloReport a = monte_carlo_claim(inst, 5000, 9);
        MonteCarloReport b = monte_carlo_claim(inst, 5000, 9);
        CHECK(a.good == b.good);
        CHECK(a.frequency == b.frequency);
        // a longer run with the same seed replays the same prefix of trials
        MonteCarloReport c = monte_carlo_claim(inst, 2500, 9);
        CHECK(c.good <= a.good);
    }
    SECTION("frequency is consistent with the stated lower bound") {
        MonteCarloReport rep = monte_carlo_claim(inst, 20000, 5);
        CHECK(rep.claimed_lower_bound == 5.0 / 16.0);
        CHECK(rep.trials == 20000);
        CHECK(rep.frequency == double(rep.good) / 20000.0);
        double sigma = std::sqrt(rep.frequency * (1.0 - rep.frequency) / 20000.0);
        CHECK(rep.frequency + 3.0 * sigma >= rep.claimed_lower_bound);
    }
    SECTION("guards") {
        CHECK_THROWS_AS(monte_carlo_claim(inst, 0, 1), PreconditionError);
        CHECK_THROWS_AS(monte_carlo_claim(testgen::random_coalition_instance(2, 5, 8, 1), 10, 1),
                        PreconditionError);
        CHECK_THROWS_AS(monte_carlo_claim(testgen::random_coalition_instance(3, 4, 8, 1), 10, 1),
                        PreconditionError);
    }
}
