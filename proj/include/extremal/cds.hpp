#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "rational.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace extremal {

// ---- number backends -------------------------------------------------------
//
// The derandomized construction runs either on 80-bit long doubles (fast path,
// monotonicity asserted with 1e-9 slack) or on exact rationals with the keep
// probability rounded to denominator 2^40 (reference path, zero slack).

struct FloatOps {
    using Num = long double;
    static Num from_ll(long long v) { return (Num)v; }
    static Num ratio(long long a, long long b) { return (Num)a / (Num)b; }
    static long long floor_ll(Num v) { return (long long)std::floor(v); }
    static double to_double(Num v) { return double(v); }
    static Num keep_probability(int k) {
        return std::log((Num)(k + 1)) / (Num)(k + 1);
    }
};

struct ExactOps {
    using Num = mpq_class;
    static Num from_ll(long long v) { return mpq_of(v); }
    static Num ratio(long long a, long long b) { return mpq_ratio(a, b); }
    static long long floor_ll(const Num& v) {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
        require(r.fits_slong_p(), "ExactOps::floor_ll: out of range");
        return r.get_si();
    }
    static double to_double(const Num& v) { return v.get_d(); }
    // ln(k+1)/(k+1) rounded to the nearest dyadic with denominator 2^40
    static Num keep_probability(int k) {
        long double p = std::log((long double)(k + 1)) / (long double)(k + 1);
        long long num = (long long)std::llround(p * 1099511627776.0L); // 2^40
        return mpq_ratio(num, 1099511627776LL);
    }
};

// ---- the component-merging budget f ----------------------------------------
//
// With u = n/(k+1) and x = (y+z)u for integer y >= 0, z in [0,1]:
//   f(x) = u*2z - 2                          for y = 0   (i.e. f = 2x-2)
//   f(x) = u*(z/y + 1/(y-1) + ... + 1/1 + 2) - 2   for y >= 1
// Piecewise linear, increasing, concave, f(1) = 0. Defined for x >= 1.
template <class Ops>
typename Ops::Num f_nk_impl(long long n, int k, const typename Ops::Num& x) {
    using Num = typename Ops::Num;
    require(n >= 1 && k >= 0, "f_nk: bad n or k");
    if (x < Ops::from_ll(1)) throw DomainError("f_nk: x below 1");
    Num rho = x * Ops::from_ll(k + 1) / Ops::from_ll(n);
    long long y = Ops::floor_ll(rho);
    Num z = rho - Ops::from_ll(y);
    Num u = Ops::ratio(n, k + 1);
    if (y == 0) return u * Num(2) * z - Ops::from_ll(2);
    Num acc = z / Ops::from_ll(y);
    for (long long j = 1; j < y; ++j) acc += Ops::ratio(1, j);
    return u * (acc + Ops::from_ll(2)) - Ops::from_ll(2);
}

inline mpq_class f_nk(long long n, int k, const mpq_class& x) {
    return f_nk_impl<ExactOps>(n, k, x);
}

inline double f_nk(long long n, int k, double x) {
    return double(f_nk_impl<FloatOps>(n, k, (long double)x));
}

// expected size bound of the whole construction: n(ln(k+1)+4)/(k+1) - 2
inline double cds_size_bound(long long n, int k) {
    require(k >= 1, "cds_size_bound: need k >= 1");
    return double(n) * (std::log(double(k + 1)) + 4.0) / double(k + 1) - 2.0;
}

// E[1/(B+1)] for B ~ Binomial(k, p), in closed form.
inline double binom_inv_expectation(int k, double p) {
    require(k >= 0, "binom_inv_expectation: k < 0");
    require(p > 0.0 && p <= 1.0, "binom_inv_expectation: p outside (0,1]");
    long double lp = (long double)p;
    long double kk = (long double)(k + 1);
    return double((1.0L - std::pow(1.0L - lp, kk)) / (kk * lp));
}

namespace detail {

inline mpq_class degree_weight_sum(const Graph& g, const std::vector<int>& s) {
    std::vector<char> in(std::size_t(g.n()), 0);
    for (int v : s) in[std::size_t(v)] = 1;
    mpq_class total = 0;
    for (int v : s) {
        mpq_class q(1, 1 + degree_within(g, v, in));
        q.canonicalize();
        total += q;
    }
    return total;
}

} // namespace detail

// Grow a dominating set of a connected graph into a connected one. Whenever
// G[S] still has x > 1 components:
//   - x > n/(k+1): some vertex lies in the closed neighborhoods of at least
//     ceil((k+1)x/n) >= 2 smallest-index component representatives (each
//     closed neighborhood has >= k+1 vertices, pigeonhole over n); add it.
//   - x <= n/(k+1): walk from the smallest component to the nearest vertex of
//     S outside it. Interior vertices are undominated-by-nothing at distance
//     <= 2, so at most 2 get added and the walk ends in another component.
// Total growth is at most f(x0) for the starting component count x0.
inline std::vector<int> merge_components(const Graph& g, const std::vector<int>& s) {
    if (!is_connected(g)) throw HostDisconnected("merge_components: host graph disconnected");
    std::vector<int> set = s;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    require(!set.empty(), "merge_components: empty set");
    if (!is_dominating(g, set)) throw NotDominating("merge_components: set is not dominating");

    long long n = g.n();
    int k = g.min_degree();
    auto comps0 = induced_components(g, set);
    long long x0 = (long long)comps0.size();
    invariant(mpq_of(x0) <= detail::degree_weight_sum(g, set),
              "merge_components: component count exceeds degree weight sum");

    std::vector<char> in(std::size_t(g.n()), 0);
    for (int v : set) in[std::size_t(v)] = 1;

    for (;;) {
        auto comps = induced_components(g, set);
        long long x = (long long)comps.size();
        if (x <= 1) break;

        if (x * (k + 1) > n) {
            // hub step: representatives are the smallest members
            std::vector<int> hits(std::size_t(n), 0);
            for (const auto& comp : comps) {
                int rep = comp.front();
                ++hits[std::size_t(rep)];
                for (int y : g.neighbors(rep)) ++hits[std::size_t(y)];
            }
            int u = 0;
            for (int v = 1; v < g.n(); ++v)
                if (hits[std::size_t(v)] > hits[std::size_t(u)]) u = v;
            long long need = ((k + 1) * x + n - 1) / n;
            invariant(hits[std::size_t(u)] >= need,
                      "merge_components: pigeonhole hub short of its quota");
            if (!in[std::size_t(u)]) {
                in[std::size_t(u)] = 1;
                set.insert(std::lower_bound(set.begin(), set.end(), u), u);
                continue;
            }
            // a hub inside S would mean its components were already joined;
            // unreachable, but fall through to the pairwise step if it happens
        }

        // pairwise step: BFS out of the first component
        const auto& c0 = comps.front();
        std::vector<char> in_c0(std::size_t(n), 0);
        for (int v : c0) in_c0[std::size_t(v)] = 1;
        std::vector<int> parent(std::size_t(n), -2);
        std::deque<int> q;
        for (int v : c0) {
            parent[std::size_t(v)] = -1;
            q.push_back(v);
        }
        int w = -1;
        std::vector<long long> dist(std::size_t(n), 0);
        while (!q.empty() && w < 0) {
            int xv = q.front();
            q.pop_front();
            for (int y : g.neighbors(xv)) {
                if (parent[std::size_t(y)] != -2) continue;
                parent[std::size_t(y)] = xv;
                dist[std::size_t(y)] = dist[std::size_t(xv)] + 1;
                if (in[std::size_t(y)] && !in_c0[std::size_t(y)]) {
                    w = y;
                    break;
                }
                q.push_back(y);
            }
        }
        invariant(w >= 0, "merge_components: no other component reachable");
        invariant(dist[std::size_t(w)] <= 3,
                  "merge_components: nearest foreign component beyond distance 3");
        for (int v = parent[std::size_t(w)]; v >= 0 && !in[std::size_t(v)];
             v = parent[std::size_t(v)]) {
            in[std::size_t(v)] = 1;
            set.insert(std::lower_bound(set.begin(), set.end(), v), v);
        }
    }

    if (x0 > 1) {
        mpq_class budget = f_nk(n, k, mpq_of(x0));
        invariant(mpq_of((long long)set.size() - (long long)s.size()) <= budget,
                  "merge_components: exceeded the f budget");
    }
    return set;
}

// Textbook greedy: repeatedly take the vertex covering the most uncovered
// closed neighborhoods (smallest index on ties).
inline std::vector<int> greedy_dominating_set(const Graph& g) {
    require(g.n() >= 1, "greedy_dominating_set: empty graph");
    std::vector<char> covered(std::size_t(g.n()), 0);
    long long uncovered = g.n();
    std::vector<int> out;
    while (uncovered > 0) {
        int best = -1;
        long long best_gain = -1;
        for (int v = 0; v < g.n(); ++v) {
            long long gain = covered[std::size_t(v)] ? 0 : 1;
            for (int y : g.neighbors(v)) gain += covered[std::size_t(y)] ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
            }
        }
        invariant(best_gain > 0, "greedy_dominating_set: no progress");
        out.push_back(best);
        if (!covered[std::size_t(best)]) {
            covered[std::size_t(best)] = 1;
            --uncovered;
        }
        for (int y : g.neighbors(best))
            if (!covered[std::size_t(y)]) {
                covered[std::size_t(y)] = 1;
                --uncovered;
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class Decision : std::uint8_t { undecided, in, out };

template <class Num>
struct PsiParts {
    Num expected_t;   // E[|T|]
    Num expected_y;   // E[|Y_T|]
    Num expected_d;   // E[D~], the degree weight surrogate
    Num f_of_d;
    Num psi;          // expected_t + expected_y + f(expected_d)
};

// Conditional expectation of the potential given the partial in/out decisions.
// T-degree of a vertex counts decided-in neighbors (q) plus a Binomial(s, p)
// draw over its undecided neighbors; undominated survivors are charged 1 each.
template <class Ops>
PsiParts<typename Ops::Num> psi_parts(const Graph& g, const std::vector<Decision>& dec,
                                      const typename Ops::Num& p) {
    using Num = typename Ops::Num;
    int n = g.n();
    require((int)dec.size() == n, "psi_parts: decision vector size mismatch");

    Num one = Ops::from_ll(1);
    Num q1mp = one - p; // 1-p
    std::vector<Num> pow1mp(std::size_t(n + 2));
    pow1mp[0] = one;
    for (int e = 1; e <= n + 1; ++e) pow1mp[std::size_t(e)] = pow1mp[std::size_t(e - 1)] * q1mp;

    // sum over a of C(s,a) p^a (1-p)^(s-a) / (q+1+a)
    auto binom_sum = [&](int q, int s) {
        Num term = pow1mp[std::size_t(s)]; // a = 0
        Num total = term / Ops::from_ll(q + 1);
        for (int a = 1; a <= s; ++a) {
            term = term * p / q1mp * Ops::from_ll(s - a + 1) / Ops::from_ll(a);
            total += term / Ops::from_ll(q + 1 + a);
        }
        return total;
    };

    PsiParts<Num> parts;
    parts.expected_t = Ops::from_ll(0);
    parts.expected_y = Ops::from_ll(0);
    parts.expected_d = Ops::from_ll(0);

    for (int j = 0; j < n; ++j) {
        int q = 0, s = 0;
        for (int y : g.neighbors(j)) {
            if (dec[std::size_t(y)] == Decision::in) ++q;
            else if (dec[std::size_t(y)] == Decision::undecided) ++s;
        }
        switch (dec[std::size_t(j)]) {
            case Decision::in:
                parts.expected_t += one;
                parts.expected_d += binom_sum(q, s);
                break;
            case Decision::out:
                if (q == 0) {
                    parts.expected_y += pow1mp[std::size_t(s)];
                    parts.expected_d += pow1mp[std::size_t(s)];
                }
                break;
            case Decision::undecided: {
                parts.expected_t += p;
                Num in_part = p * binom_sum(q, s);
                Num y_part = q == 0 ? pow1mp[std::size_t(s + 1)] : Ops::from_ll(0);
                parts.expected_y += y_part;
                parts.expected_d += in_part + y_part;
                break;
            }
        }
    }

    parts.f_of_d = f_nk_impl<Ops>(n, g.min_degree(), parts.expected_d);
    parts.psi = parts.expected_t + parts.expected_y + parts.f_of_d;
    return parts;
}

template <class Num>
struct DerandomizeRun {
    std::vector<Decision> decisions;
    std::vector<Num> psi_trace; // psi_0 .. psi_n
    PsiParts<Num> start, end;
};

// Fix vertices 0..n-1 in order, each time keeping the branch with the smaller
// conditional potential ("in" wins ties). The potential never increases:
// psi_i is the p-mix of the two branch values and f is concave.
template <class Ops>
DerandomizeRun<typename Ops::Num> derandomize_core(const Graph& g, const typename Ops::Num& p) {
    using Num = typename Ops::Num;
    DerandomizeRun<Num> run;
    run.decisions.assign(std::size_t(g.n()), Decision::undecided);
    run.start = psi_parts<Ops>(g, run.decisions, p);
    run.psi_trace.push_back(run.start.psi);
    for (int v = 0; v < g.n(); ++v) {
        run.decisions[std::size_t(v)] = Decision::in;
        Num psi_in = psi_parts<Ops>(g, run.decisions, p).psi;
        run.decisions[std::size_t(v)] = Decision::out;
        Num psi_out = psi_parts<Ops>(g, run.decisions, p).psi;
        if (psi_in <= psi_out) run.decisions[std::size_t(v)] = Decision::in;
        run.psi_trace.push_back(std::min(psi_in, psi_out));
    }
    run.end = psi_parts<Ops>(g, run.decisions, p);
    return run;
}

struct CdsResult {
    std::vector<int> cds;   // final connected dominating set
    std::vector<int> base;  // T together with the undominated survivors
    long long t_size = 0;
    long long y_size = 0;
    double bound = 0;       // n(ln(k+1)+4)/(k+1) - 2
    double psi_start = 0;   // derandomized runs only
    double psi_end = 0;
    double max_psi_increase = 0; // largest observed uptick; <= slack required
};

namespace detail {

inline std::vector<int> survivors(const Graph& g, const std::vector<char>& in_t) {
    std::vector<int> y;
    for (int v = 0; v < g.n(); ++v) {
        if (in_t[std::size_t(v)]) continue;
        bool dominated = false;
        for (int u : g.neighbors(v))
            if (in_t[std::size_t(u)]) {
                dominated = true;
                break;
            }
        if (!dominated) y.push_back(v);
    }
    return y;
}

inline CdsResult finish_cds(const Graph& g, const std::vector<char>& in_t) {
    CdsResult res;
    std::vector<int> base;
    for (int v = 0; v < g.n(); ++v)
        if (in_t[std::size_t(v)]) {
            base.push_back(v);
            ++res.t_size;
        }
    std::vector<int> y = survivors(g, in_t);
    res.y_size = (long long)y.size();
    base.insert(base.end(), y.begin(), y.end());
    std::sort(base.begin(), base.end());
    res.base = base;
    res.cds = merge_components(g, base);
    res.bound = cds_size_bound(g.n(), std::max(1, g.min_degree()));
    invariant(is_dominating(g, res.cds), "cds: result not dominating");
    invariant(induced_components(g, res.cds).size() == 1, "cds: result not connected");
    return res;
}

} // namespace detail

// Sample T with the Theorem-style keep probability, add every undominated
// vertex, then merge. The SIZE bound holds in expectation, not per run.
inline CdsResult randomized_cds(const Graph& g, std::uint64_t seed) {
    require(g.n() >= 1, "randomized_cds: empty graph");
    if (!is_connected(g)) throw HostDisconnected("randomized_cds: host graph disconnected");
    if (g.n() == 1) {
        CdsResult res;
        res.cds = res.base = {0};
        res.t_size = 0;
        res.y_size = 1;
        res.bound = 0;
        return res;
    }
    int k = g.min_degree();
    require(k >= 1, "randomized_cds: need min degree >= 1");
    double p = std::log(double(k + 1)) / double(k + 1);
    SplitMix64 rng(seed);
    std::vector<char> in_t(std::size_t(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) in_t[std::size_t(v)] = rng.coin(p) ? 1 : 0;
    return detail::finish_cds(g, in_t);
}

enum class CdsArith { float80, rational };

// Deterministic version via conditional expectations. float80 asserts the
// potential is non-increasing up to 1e-9; rational asserts it exactly.
inline CdsResult derandomized_cds(const Graph& g, CdsArith arith = CdsArith::float80) {
    require(g.n() >= 1, "derandomized_cds: empty graph");
    if (!is_connected(g)) throw HostDisconnected("derandomized_cds: host graph disconnected");
    if (g.n() == 1) {
        CdsResult res;
        res.cds = res.base = {0};
        res.y_size = 1;
        return res;
    }
    require(g.min_degree() >= 1, "derandomized_cds: need min degree >= 1");

    std::vector<char> in_t(std::size_t(g.n()), 0);
    CdsResult res;
    if (arith == CdsArith::float80) {
        auto run = derandomize_core<FloatOps>(g, FloatOps::keep_probability(g.min_degree()));
        long double worst = 0;
        for (std::size_t i = 1; i < run.psi_trace.size(); ++i)
            worst = std::max(worst, run.psi_trace[i] - run.psi_trace[i - 1]);
        invariant(worst <= 1e-9L, "derandomized_cds: potential increased beyond float slack");
        res.max_psi_increase = double(worst);
        res.psi_start = double(run.start.psi);
        res.psi_end = double(run.end.psi);
        for (int v = 0; v < g.n(); ++v)
            in_t[std::size_t(v)] = run.decisions[std::size_t(v)] == Decision::in ? 1 : 0;
    } else {
        auto run = derandomize_core<ExactOps>(g, ExactOps::keep_probability(g.min_degree()));
        for (std::size_t i = 1; i < run.psi_trace.size(); ++i)
            invariant(run.psi_trace[i] <= run.psi_trace[i - 1],
                      "derandomized_cds: exact potential increased");
        res.psi_start = run.start.psi.get_d();
        res.psi_end = run.end.psi.get_d();
        for (int v = 0; v < g.n(); ++v)
            in_t[std::size_t(v)] = run.decisions[std::size_t(v)] == Decision::in ? 1 : 0;
    }

    CdsResult fin = detail::finish_cds(g, in_t);
    fin.psi_start = res.psi_start;
    fin.psi_end = res.psi_end;
    fin.max_psi_increase = res.max_psi_increase;
    return fin;
}

// m blocks, each a K_{k+1} with the edge x_i y_i removed, chained by the
// links y_i x_{i+1} into a ring. k-regular on (k+1)m vertices; domination
// needs one pick per block but connecting them forces nearly two.
inline Graph gen_cycle_of_cliques(int k, int m) {
    require(k >= 2, "gen_cycle_of_cliques: need k >= 2");
    require(m >= 2, "gen_cycle_of_cliques: need m >= 2");
    int bs = k + 1;
    EdgeList edges;
    for (int b = 0; b < m; ++b) {
        int base = b * bs;
        for (int i = 0; i < bs; ++i)
            for (int j = i + 1; j < bs; ++j) {
                if (i == 0 && j == 1) continue; // the removed x_b y_b edge
                edges.push_back({base + i, base + j});
            }
        int y = base + 1;
        int x_next = ((b + 1) % m) * bs;
        edges.push_back(norm_edge(y, x_next));
    }
    Graph g(bs * m, edges);
    invariant(g.min_degree() == k && g.max_degree() == k,
              "gen_cycle_of_cliques: construction is not k-regular");
    return g;
}

} // namespace extremal
