#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "rational.hpp"

namespace extremal {

// ---- Poisson binomial, exact --------------------------------------------

struct PoissonBinomial {
    std::vector<mpq_class> probabilities;
};

inline void validate_pb(const PoissonBinomial& pb) {
    for (const auto& p : pb.probabilities)
        require(p >= 0 && p <= 1, "PoissonBinomial: probability outside [0,1]");
}

// pmf[j] = Pr[X = j] by the usual convolution, exact rationals throughout
inline std::vector<mpq_class> pb_pmf(const PoissonBinomial& pb) {
    validate_pb(pb);
    std::vector<mpq_class> dp(1, mpq_class(1));
    for (const auto& p : pb.probabilities) {
        std::vector<mpq_class> next(dp.size() + 1, mpq_class(0));
        mpq_class q = 1 - p;
        for (std::size_t j = 0; j < dp.size(); ++j) {
            next[j] += dp[j] * q;
            next[j + 1] += dp[j] * p;
        }
        dp = std::move(next);
    }
    return dp;
}

inline mpq_class pb_cdf(const PoissonBinomial& pb, long long d) {
    if (d < 0) return mpq_class(0);
    auto pmf = pb_pmf(pb);
    if (d >= (long long)pmf.size() - 1) return mpq_class(1);
    mpq_class acc = 0;
    for (long long j = 0; j <= d; ++j) acc += pmf[std::size_t(j)];
    return acc;
}

// Jogdeo-Samuels: some median of X sits at floor or ceil of the mean.
// m is a median when Pr[X <= m] >= 1/2 and Pr[X >= m] >= 1/2.
inline bool median_check(const PoissonBinomial& pb) {
    validate_pb(pb);
    auto pmf = pb_pmf(pb);
    mpq_class mu = 0;
    for (const auto& p : pb.probabilities) mu += p;
    mpz_class fl, ce;
    mpz_fdiv_q(fl.get_mpz_t(), mu.get_num().get_mpz_t(), mu.get_den().get_mpz_t());
    mpz_cdiv_q(ce.get_mpz_t(), mu.get_num().get_mpz_t(), mu.get_den().get_mpz_t());
    mpq_class half(1, 2);
    auto is_median = [&](const mpz_class& mz) {
        if (mz < 0 || mz > (long)pb.probabilities.size()) return false;
        long long m = mz.get_si();
        mpq_class le = 0, ge = 0;
        for (long long j = 0; j < (long long)pmf.size(); ++j) {
            if (j <= m) le += pmf[std::size_t(j)];
            if (j >= m) ge += pmf[std::size_t(j)];
        }
        return le >= half && ge >= half;
    };
    return is_median(fl) || is_median(ce);
}

// ---- l1-ball to Hamming-ball rounding ------------------------------------

struct L1BallInstance {
    std::vector<mpq_class> center;         // x, arbitrary reals (as rationals)
    long long radius = 0;                  // d, integer
    std::vector<std::vector<int>> points;  // A, binary vectors within l1 radius
};

inline void validate_l1_instance(const L1BallInstance& inst) {
    std::size_t n = inst.center.size();
    require(n >= 1, "L1BallInstance: empty center");
    require(inst.radius >= 0, "L1BallInstance: negative radius");
    require(!inst.points.empty(), "L1BallInstance: no points");
    for (const auto& a : inst.points) {
        require(a.size() == n, "L1BallInstance: point length mismatch");
        mpq_class dist = 0;
        for (std::size_t i = 0; i < n; ++i) {
            require(a[i] == 0 || a[i] == 1, "L1BallInstance: point not binary");
            mpq_class diff = inst.center[i] - a[i];
            dist += diff < 0 ? mpq_class(-diff) : diff;
        }
        if (dist > (long)inst.radius)
            throw DomainError("L1BallInstance: point outside the l1 ball");
    }
}

struct HammingCenterResult {
    std::vector<int> y;
    long long covered = 0;                   // points within Hamming radius d of y
    std::vector<mpq_class> expectation_trace; // E[covered | prefix], length n+1
};

// Deterministic center y with |{a : Hamming(a,y) <= d}| >= |A|/2.
//
// Randomized seed: clamp x to [0,1] and draw y_i ~ Bernoulli(x_i). Each
// point's mismatch count is then Poisson binomial with mean <= d, so by the
// median property it lands within d with probability >= 1/2. Derandomize by
// fixing coordinates left to right, keeping the branch with the larger
// conditional expectation; per point everything reduces to suffix tables
// F(i,t) = Pr[mismatches among coordinates i.. <= t].
inline HammingCenterResult hamming_center(const L1BallInstance& inst) {
    validate_l1_instance(inst);
    int n = (int)inst.center.size();
    long long d = inst.radius;
    const auto& A = inst.points;
    std::size_t na = A.size();

    std::vector<mpq_class> q(std::size_t(n), mpq_class(0));
    for (int i = 0; i < n; ++i) {
        mpq_class v = inst.center[std::size_t(i)];
        if (v < 0) v = 0;
        if (v > 1) v = 1;
        q[std::size_t(i)] = v;
    }

    long long tmax = std::min<long long>(d, n);
    auto idx = [&](int i, long long t) { return std::size_t(i) * std::size_t(tmax + 1) + std::size_t(t); };
    std::vector<std::vector<mpq_class>> suffix(na);
    for (std::size_t a = 0; a < na; ++a) {
        auto& F = suffix[a];
        F.assign(std::size_t(n + 1) * std::size_t(tmax + 1), mpq_class(0));
        for (long long t = 0; t <= tmax; ++t) F[idx(n, t)] = 1;
        for (int i = n - 1; i >= 0; --i) {
            mpq_class r = A[a][std::size_t(i)] == 1 ? mpq_class(1 - q[std::size_t(i)])
                                                    : q[std::size_t(i)];
            for (long long t = 0; t <= tmax; ++t) {
                mpq_class hit = t >= 1 ? F[idx(i + 1, t - 1)] : mpq_class(0);
                F[idx(i, t)] = r * hit + (1 - r) * F[idx(i + 1, t)];
            }
        }
    }

    HammingCenterResult res;
    res.y.assign(std::size_t(n), 0);
    std::vector<long long> miss(na, 0);

    mpq_class expect = 0;
    for (std::size_t a = 0; a < na; ++a) expect += suffix[a][idx(0, tmax)];
    invariant(2 * expect >= mpq_of((long long)na),
              "hamming_center: starting expectation below half the points");
    res.expectation_trace.push_back(expect);

    for (int i = 0; i < n; ++i) {
        mpq_class val0 = 0, val1 = 0;
        for (std::size_t a = 0; a < na; ++a) {
            int bit = A[a][std::size_t(i)];
            long long m0 = miss[a] + (bit != 0 ? 1 : 0);
            long long m1 = miss[a] + (bit != 1 ? 1 : 0);
            if (d - m0 >= 0) val0 += suffix[a][idx(i + 1, std::min(tmax, d - m0))];
            if (d - m1 >= 0) val1 += suffix[a][idx(i + 1, std::min(tmax, d - m1))];
        }
        int b = val1 > val0 ? 1 : 0; // 0 on ties
        mpq_class best = b == 1 ? val1 : val0;
        invariant(best >= expect, "hamming_center: conditional expectation dropped");
        expect = best;
        res.expectation_trace.push_back(expect);
        res.y[std::size_t(i)] = b;
        for (std::size_t a = 0; a < na; ++a)
            if (A[a][std::size_t(i)] != b) ++miss[a];
    }

    for (std::size_t a = 0; a < na; ++a)
        if (miss[a] <= d) ++res.covered;
    invariant(mpq_of(res.covered) == expect,
              "hamming_center: final expectation is not the exact count");
    invariant(2 * res.covered >= (long long)na,
              "hamming_center: covered fewer than half the points");
    return res;
}

// ---- root-of-unity vector covers ------------------------------------------

inline bool is_prime_small(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// Vectors with coordinates w^{a_i}, w a primitive pth root of unity, encoded
// by their exponents. The plain scalar product of v and u is sum of
// w^{(a_i+b_i) mod p}; it vanishes iff every residue appears equally often
// (forcing p | n), because the minimal polynomial 1+x+..+x^{p-1} of w over Q
// divides any vanishing exponent-sum polynomial.
inline bool kpn_cover_relation(const std::vector<int>& a, const std::vector<int>& b, int p) {
    require(is_prime_small(p), "kpn_cover_relation: p not prime");
    require(a.size() == b.size(), "kpn_cover_relation: length mismatch");
    require(!a.empty(), "kpn_cover_relation: empty vectors");
    int n = (int)a.size();
    if (n % p != 0) return false;
    std::vector<int> count(std::size_t(p), 0);
    for (int i = 0; i < n; ++i) {
        require(a[std::size_t(i)] >= 0 && a[std::size_t(i)] < p, "kpn_cover_relation: bad residue");
        require(b[std::size_t(i)] >= 0 && b[std::size_t(i)] < p, "kpn_cover_relation: bad residue");
        ++count[std::size_t((a[std::size_t(i)] + b[std::size_t(i)]) % p)];
    }
    for (int c : count)
        if (c != n / p) return false;
    return true;
}

inline long long kpn_linear_bound(int n, int p) { return (long long)(p - 1) * n; }

// ceil(p^n ((n/p)!)^p / n!), the counting lower bound
inline long long kpn_counting_bound(int n, int p) {
    require(p >= 2 && n >= 1 && n % p == 0, "kpn_counting_bound: need p | n");
    mpz_class num = 1;
    for (int i = 0; i < n; ++i) num *= p;
    mpz_class fact_np = 1;
    for (int i = 2; i <= n / p; ++i) fact_np *= i;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), fact_np.get_mpz_t(), (unsigned long)p);
    num *= pw;
    mpz_class den = 1;
    for (int i = 2; i <= n; ++i) den *= i;
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    require(out.fits_slong_p(), "kpn_counting_bound: overflow");
    return out.get_si();
}

struct KpnResult {
    int k = 0;                            // minimum cover size
    std::vector<std::vector<int>> cover;  // witness, exponent vectors
    long long universe = 0;               // p^n
};

namespace detail {

inline std::vector<int> kpn_unrank(long long idx, int n, int p) {
    std::vector<int> v(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        v[std::size_t(i)] = int(idx % p);
        idx /= p;
    }
    return v;
}

inline bool kpn_extend(const std::vector<std::uint64_t>& mask, std::uint64_t full,
                       std::uint64_t covered, int depth, std::vector<long long>& chosen) {
    if (covered == full) return true;
    if (depth == 0) return false;
    long long m = (long long)mask.size();
    int u = 0;
    while ((covered >> u) & 1ULL) ++u; // lowest uncovered vector
    // every candidate must cover u (it has to be covered by someone, and
    // branching on one fixed element keeps the tree small); candidates go in
    // increasing index order so re-runs are byte-identical
    for (long long v = 0; v < m; ++v) {
        if (!((mask[std::size_t(v)] >> u) & 1ULL)) continue;
        if ((covered | mask[std::size_t(v)]) == covered) continue;
        chosen.push_back(v);
        if (kpn_extend(mask, full, covered | mask[std::size_t(v)], depth - 1, chosen))
            return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace detail

// Exact minimum number of root-of-unity vectors such that every vector of the
// same shape is orthogonal to at least one of them. Branch and bound over the
// p^n universe; translating any cover by one of its members shows some
// optimal cover contains the all-exponent-zero vector, so that one is pinned.
inline KpnResult kpn_bruteforce(int n, int p) {
    require(is_prime_small(p), "kpn_bruteforce: p not prime");
    require(n >= 1 && n % p == 0, "kpn_bruteforce: need p | n");
    bool in_budget = (p == 2 && n <= 4) || (p == 3 && n <= 3);
    if (!in_budget) throw TooLarge("kpn_bruteforce: beyond the exhaustive budget");

    long long m = 1;
    for (int i = 0; i < n; ++i) m *= p;
    std::vector<std::vector<int>> vecs;
    vecs.reserve(std::size_t(m));
    for (long long idx = 0; idx < m; ++idx) vecs.push_back(detail::kpn_unrank(idx, n, p));

    std::vector<std::uint64_t> mask(std::size_t(m), 0);
    for (long long v = 0; v < m; ++v)
        for (long long u = 0; u < m; ++u)
            if (kpn_cover_relation(vecs[std::size_t(v)], vecs[std::size_t(u)], p))
                mask[std::size_t(v)] |= 1ULL << u;
    std::uint64_t full = m == 64 ? ~0ULL : (1ULL << m) - 1;

    KpnResult res;
    res.universe = m;
    for (int k = 1; k <= (int)m; ++k) {
        std::vector<long long> chosen = {0}; // the all-ones (exponent 0) vector
        if (detail::kpn_extend(mask, full, mask[0], k - 1, chosen)) {
            res.k = k;
            std::uint64_t check = 0;
            for (long long v : chosen) {
                res.cover.push_back(vecs[std::size_t(v)]);
                check |= mask[std::size_t(v)];
            }
            invariant(check == full, "kpn_bruteforce: witness does not cover");
            return res;
        }
    }
    throw InternalInvariantViolation("kpn_bruteforce: no cover up to universe size");
}

} // namespace extremal
