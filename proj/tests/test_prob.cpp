#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "extremal/prob.hpp"
#include "extremal/rng.hpp"

using namespace extremal;

namespace {

// Pr[X = j] by summing over all 2^n outcomes, the slow way
std::vector<mpq_class> pmf_by_enumeration(const std::vector<mpq_class>& ps) {
    std::size_t n = ps.size();
    REQUIRE(n <= 16);
    std::vector<mpq_class> pmf(n + 1, mpq_class(0));
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        mpq_class w = 1;
        int ones = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1ULL) {
                w *= ps[i];
                ++ones;
            } else {
                w *= mpq_class(1) - ps[i];
            }
        }
        pmf[std::size_t(ones)] += w;
    }
    return pmf;
}

std::vector<mpq_class> random_probs(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<mpq_class> ps;
    for (int i = 0; i < n; ++i) ps.push_back(mpq_ratio((long long)rng.below(9), 8));
    return ps;
}

long long hamming(const std::vector<int>& a, const std::vector<int>& b) {
    long long h = 0;
    for (std::size_t i = 0; i < a.size(); ++i) h += a[i] != b[i];
    return h;
}

// |sum of w^(a_i+b_i)| for w = exp(2 pi i / p), the analytic face of the
// orthogonality relation
bool complex_sum_vanishes(const std::vector<int>& a, const std::vector<int>& b, int p) {
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long double ang = 2.0L * 3.14159265358979323846264338L * ((a[i] + b[i]) % p) / p;
        re += std::cos(ang);
        im += std::sin(ang);
    }
    return std::sqrt(re * re + im * im) < 1e-9L;
}

} // namespace

TEST_CASE("poisson binomial pmf against full enumeration") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        int n = 3 + int(seed % 8);
        std::vector<mpq_class> ps = random_probs(n, 500 + seed);
        PoissonBinomial pb{ps};
        std::vector<mpq_class> fast = pb_pmf(pb);
        std::vector<mpq_class> slow = pmf_by_enumeration(ps);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == slow[j]);
        mpq_class total = 0;
        for (const auto& v : fast) total += v;
        CHECK(total == 1);
    }
    SECTION("degenerate inputs") {
        PoissonBinomial zeros{{mpq_class(0), mpq_class(0), mpq_class(0)}};
        CHECK(pb_pmf(zeros)[0] == 1);
        CHECK(pb_cdf(zeros, 0) == 1);
        PoissonBinomial ones{{mpq_class(1), mpq_class(1)}};
        CHECK(pb_pmf(ones)[2] == 1);
        CHECK(pb_cdf(ones, 1) == 0);
        PoissonBinomial none{{}};
        CHECK(pb_pmf(none) == std::vector<mpq_class>{mpq_class(1)});
    }
    SECTION("two fair coins") {
        PoissonBinomial pb{{mpq_ratio(1, 2), mpq_ratio(1, 2)}};
        CHECK(pb_cdf(pb, -1) == 0);
        CHECK(pb_cdf(pb, 0) == mpq_ratio(1, 4));
        CHECK(pb_cdf(pb, 1) == mpq_ratio(3, 4));
        CHECK(pb_cdf(pb, 2) == 1);
        CHECK(pb_cdf(pb, 99) == 1);
    }
    SECTION("probabilities outside the unit interval are rejected") {
        PoissonBinomial bad{{mpq_ratio(3, 2)}};
        CHECK_THROWS_AS(pb_pmf(bad), PreconditionError);
        PoissonBinomial neg{{mpq_ratio(-1, 4)}};
        CHECK_THROWS_AS(pb_pmf(neg), PreconditionError);
    }
}

TEST_CASE("a median always sits at floor or ceil of the mean") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        int n = 1 + int(seed % 14);
        PoissonBinomial pb{random_probs(n, 900 + seed)};
        INFO("seed=" << seed << " n=" << n);
        CHECK(median_check(pb));
    }
    SECTION("fair coins, even and odd counts") {
        for (int n = 1; n <= 20; ++n) {
            PoissonBinomial pb{std::vector<mpq_class>(std::size_t(n), mpq_ratio(1, 2))};
            CHECK(median_check(pb));
        }
    }
    SECTION("integral means") {
        PoissonBinomial sure{{mpq_class(1), mpq_class(1), mpq_class(0)}};
        CHECK(median_check(sure));
        PoissonBinomial mix{{mpq_ratio(1, 2), mpq_ratio(1, 2), mpq_class(1)}};
        CHECK(median_check(mix));
    }
}

TEST_CASE("l1 instance validation") {
    L1BallInstance inst;
    inst.center = {mpq_ratio(1, 2), mpq_ratio(1, 2)};
    inst.radius = 1;
    inst.points = {{0, 1}};
    CHECK_NOTHROW(validate_l1_instance(inst));

    L1BallInstance outside = inst;
    outside.center = {mpq_class(0), mpq_class(0)};
    outside.points = {{1, 1}};
    CHECK_THROWS_AS(validate_l1_instance(outside), DomainError);

    L1BallInstance nonbin = inst;
    nonbin.points = {{0, 2}};
    CHECK_THROWS_AS(validate_l1_instance(nonbin), PreconditionError);

    L1BallInstance shortpt = inst;
    shortpt.points = {{0}};
    CHECK_THROWS_AS(validate_l1_instance(shortpt), PreconditionError);

    L1BallInstance empty = inst;
    empty.points = {};
    CHECK_THROWS_AS(validate_l1_instance(empty), PreconditionError);

    L1BallInstance negr = inst;
    negr.radius = -1;
    CHECK_THROWS_AS(validate_l1_instance(negr), PreconditionError);
}

TEST_CASE("hamming rounding of an l1 ball") {
    SECTION("a binary center reproduces itself") {
        L1BallInstance inst;
        inst.center = {mpq_class(1), mpq_class(0), mpq_class(1)};
        inst.radius = 0;
        inst.points = {{1, 0, 1}};
        HammingCenterResult res = hamming_center(inst);
        CHECK(res.y == std::vector<int>{1, 0, 1});
        CHECK(res.covered == 1);
    }
    SECTION("center coordinates beyond [0,1] are clamped for the rounding") {
        L1BallInstance inst;
        inst.center = {mpq_ratio(-1, 2), mpq_ratio(3, 2)};
        inst.radius = 2;
        inst.points = {{0, 1}, {1, 1}};
        HammingCenterResult res = hamming_center(inst);
        CHECK(res.covered >= 1);
        CHECK(res.expectation_trace.size() == 3);
    }
    SECTION("random instances cover at least half the points") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            int n = 6 + int(seed % 4);
            SplitMix64 rng(7000 + seed);
            L1BallInstance inst;
            for (int i = 0; i < n; ++i) inst.center.push_back(mpq_ratio((long long)rng.below(9), 8));
            inst.radius = n / 2 + 1;
            std::vector<int> rounded;
            for (int i = 0; i < n; ++i) rounded.push_back(inst.center[std::size_t(i)] >= mpq_ratio(1, 2) ? 1 : 0);
            inst.points.push_back(rounded);
            int attempts = 0;
            while ((int)inst.points.size() < 12 && attempts < 300) {
                ++attempts;
                std::vector<int> cand;
                for (int i = 0; i < n; ++i) cand.push_back(int(rng.below(2)));
                mpq_class dist = 0;
                for (int i = 0; i < n; ++i) {
                    mpq_class diff = inst.center[std::size_t(i)] - cand[std::size_t(i)];
                    dist += diff < 0 ? mpq_class(-diff) : diff;
                }
                if (dist <= (long)inst.radius) inst.points.push_back(cand);
            }
            HammingCenterResult res = hamming_center(inst);
            INFO("seed=" << seed << " n=" << n << " |A|=" << inst.points.size());

            long long direct = 0;
            for (const auto& a : inst.points)
                if (hamming(a, res.y) <= inst.radius) ++direct;
            CHECK(res.covered == direct);
            CHECK(2 * res.covered >= (long long)inst.points.size());

            REQUIRE(res.expectation_trace.size() == std::size_t(n) + 1);
            CHECK(2 * res.expectation_trace.front() >= mpq_of((long long)inst.points.size()));
            for (std::size_t i = 1; i < res.expectation_trace.size(); ++i)
                CHECK(res.expectation_trace[i] >= res.expectation_trace[i - 1]);
            CHECK(res.expectation_trace.back() == mpq_of(res.covered));
        }
    }
}

TEST_CASE("orthogonality relation for root-of-unity vectors") {
    SECTION("pinned examples") {
        CHECK(kpn_cover_relation({0, 0}, {0, 1}, 2));
        CHECK_FALSE(kpn_cover_relation({0, 0}, {0, 0}, 2));
        CHECK(kpn_cover_relation({0, 0, 0}, {0, 1, 2}, 3));
        CHECK(kpn_cover_relation({1, 2, 0}, {1, 2, 0}, 3));
        CHECK_FALSE(kpn_cover_relation({0, 0, 0}, {0, 1, 1}, 3));
        CHECK_FALSE(kpn_cover_relation({0, 0, 0}, {0, 1, 2}, 2)); // 2 does not divide 3
    }
    SECTION("guards") {
        CHECK_THROWS_AS(kpn_cover_relation({0, 0}, {0, 1}, 4), PreconditionError);
        CHECK_THROWS_AS(kpn_cover_relation({0, 0}, {0}, 2), PreconditionError);
        CHECK_THROWS_AS(kpn_cover_relation({}, {}, 2), PreconditionError);
        CHECK_THROWS_AS(kpn_cover_relation({0, 2}, {0, 1}, 2), PreconditionError);
    }
    SECTION("agrees with the vanishing complex sum") {
        for (int p : {2, 3, 5}) {
            for (std::uint64_t seed = 0; seed < 60; ++seed) {
                SplitMix64 rng(p * 1000 + seed);
                int n = p * (1 + int(seed % 2));
                std::vector<int> a, b;
                for (int i = 0; i < n; ++i) a.push_back(int(rng.below(std::uint64_t(p))));
                for (int i = 0; i < n; ++i) b.push_back(int(rng.below(std::uint64_t(p))));
                INFO("p=" << p << " seed=" << seed);
                CHECK(kpn_cover_relation(a, b, p) == complex_sum_vanishes(a, b, p));
            }
        }
    }
}

TEST_CASE("cover size bounds") {
    CHECK(kpn_linear_bound(3, 3) == 6);
    CHECK(kpn_linear_bound(2, 2) == 2);
    CHECK(kpn_linear_bound(10, 2) == 10);
    CHECK(kpn_counting_bound(2, 2) == 2);
    CHECK(kpn_counting_bound(4, 2) == 3);
    CHECK(kpn_counting_bound(3, 3) == 5);
    CHECK(kpn_counting_bound(6, 3) == 9);
    CHECK_THROWS_AS(kpn_counting_bound(5, 3), PreconditionError);
}

TEST_CASE("exact minimum covers") {
    struct Row {
        int n, p, expect;
    };
    for (Row row : {Row{2, 2, 2}, Row{4, 2, 4}, Row{3, 3, 6}}) {
        KpnResult res = kpn_bruteforce(row.n, row.p);
        INFO("n=" << row.n << " p=" << row.p);
        CHECK(res.k == row.expect);
        CHECK((long long)res.cover.size() == res.k);
        long long m = 1;
        for (int i = 0; i < row.n; ++i) m *= row.p;
        CHECK(res.universe == m);
        CHECK(res.k >= kpn_linear_bound(row.n, row.p));
        CHECK(res.k >= kpn_counting_bound(row.n, row.p));
        // the witness really is a cover: re-walk the whole universe
        for (long long idx = 0; idx < m; ++idx) {
            std::vector<int> v(std::size_t(row.n), 0);
            long long rem = idx;
            for (int i = 0; i < row.n; ++i) {
                v[std::size_t(i)] = int(rem % row.p);
                rem /= row.p;
            }
            bool covered = false;
            for (const auto& c : res.cover)
                if (kpn_cover_relation(v, c, row.p)) {
                    covered = true;
                    break;
                }
            if (!covered) {
                INFO("uncovered index " << idx);
                CHECK(covered);
            }
        }
    }
    SECTION("budget and divisibility guards") {
        CHECK_THROWS_AS(kpn_bruteforce(6, 2), TooLarge);
        CHECK_THROWS_AS(kpn_bruteforce(6, 3), TooLarge);
        CHECK_THROWS_AS(kpn_bruteforce(3, 2), PreconditionError);
        CHECK_THROWS_AS(kpn_bruteforce(4, 4), PreconditionError);
    }
}
