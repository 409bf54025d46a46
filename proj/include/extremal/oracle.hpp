#pragma once

// Brute-force reference implementations, deliberately sharing no algorithm
// code with the fast paths they check. Everything here enumerates.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coalition.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "fair.hpp"
#include "graph.hpp"
#include "int_or_inf.hpp"

namespace extremal {

struct OracleBudget {
    int girth_n = 12;
    int gamma_n = 20;
    int partition_n = 10;
    int matching_n = 6;   // perfect matchings of K_{n,n}: n! <= 720
    int hamilton_n = 8;   // Hamilton cycles of K_n: (n-1)!/2 <= 2520
    long long enumeration_cap = 20000000;
};

namespace detail {

inline int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        return std::stoi(v);
    } catch (...) {
        return fallback;
    }
}

} // namespace detail

// Caps are read once; EXTREMAL_ORACLE_MAX_N overrides all vertex caps at
// once, the specific variables override individual ones on top of it.
inline const OracleBudget& oracle_budget() {
    static const OracleBudget budget = [] {
        OracleBudget b;
        int blanket = detail::env_int("EXTREMAL_ORACLE_MAX_N", -1);
        if (blanket > 0) {
            b.girth_n = b.gamma_n = b.partition_n = blanket;
            b.matching_n = b.hamilton_n = blanket;
        }
        b.girth_n = detail::env_int("EXTREMAL_ORACLE_GIRTH_N", b.girth_n);
        b.gamma_n = detail::env_int("EXTREMAL_ORACLE_GAMMA_N", b.gamma_n);
        b.partition_n = detail::env_int("EXTREMAL_ORACLE_PARTITION_N", b.partition_n);
        b.matching_n = detail::env_int("EXTREMAL_ORACLE_MATCHING_N", b.matching_n);
        b.hamilton_n = detail::env_int("EXTREMAL_ORACLE_HAMILTON_N", b.hamilton_n);
        return b;
    }();
    return budget;
}

// Girth by depth-first enumeration of simple cycles: paths rooted at each
// cycle's smallest vertex, abandoning any path already as long as the best
// cycle seen. Compare with the BFS-based fast path.
inline IntOrInf exact_girth(const Graph& g) {
    if (g.n() > oracle_budget().girth_n) throw TooLarge("exact_girth: over budget");
    long long best = (long long)g.n() + 1;
    long long visits = 0;
    std::vector<int> path;
    std::vector<std::size_t> cursor;
    std::vector<char> on_path(std::size_t(g.n()), 0);
    for (int root = 0; root < g.n(); ++root) {
        path = {root};
        cursor = {0};
        on_path[std::size_t(root)] = 1;
        while (!path.empty()) {
            int cur = path.back();
            const auto& nb = g.neighbors(cur);
            if (cursor.back() >= nb.size() || (long long)path.size() >= best) {
                on_path[std::size_t(cur)] = 0;
                path.pop_back();
                cursor.pop_back();
                continue;
            }
            int y = nb[cursor.back()++];
            if (++visits > oracle_budget().enumeration_cap)
                throw TooLarge("exact_girth: enumeration cap hit");
            if (y == root && path.size() >= 3) {
                best = std::min(best, (long long)path.size());
            } else if (y > root && !on_path[std::size_t(y)]) {
                path.push_back(y);
                cursor.push_back(0);
                on_path[std::size_t(y)] = 1;
            }
        }
        on_path[std::size_t(root)] = 0;
    }
    if (best > g.n()) return IntOrInf::infinity();
    return IntOrInf(best);
}

namespace detail {

// visit size-s subsets of 0..n-1 in lexicographic order; visitor returns
// true to stop (subset accepted)
template <class Visitor>
bool for_each_subset_of_size(int n, int s, Visitor&& visit) {
    std::vector<int> c(std::size_t(s), 0);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
        if (visit(c)) return true;
        int i = s - 1;
        while (i >= 0 && c[std::size_t(i)] == n - s + i) --i;
        if (i < 0) return false;
        ++c[std::size_t(i)];
        for (int j = i + 1; j < s; ++j) c[std::size_t(j)] = c[std::size_t(j - 1)] + 1;
    }
}

inline bool subset_dominates(const Graph& g, const std::vector<int>& sub) {
    std::vector<char> hit(std::size_t(g.n()), 0);
    for (int v : sub) {
        hit[std::size_t(v)] = 1;
        for (int y : g.neighbors(v)) hit[std::size_t(y)] = 1;
    }
    for (char h : hit)
        if (!h) return false;
    return true;
}

inline bool subset_connected(const Graph& g, const std::vector<int>& sub) {
    if (sub.empty()) return false;
    std::vector<char> in(std::size_t(g.n()), 0);
    for (int v : sub) in[std::size_t(v)] = 1;
    std::vector<int> stack = {sub[0]};
    std::vector<char> seen(std::size_t(g.n()), 0);
    seen[std::size_t(sub[0])] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int y : g.neighbors(v))
            if (in[std::size_t(y)] && !seen[std::size_t(y)]) {
                seen[std::size_t(y)] = 1;
                ++reached;
                stack.push_back(y);
            }
    }
    return reached == sub.size();
}

} // namespace detail

// minimum dominating set size, by subset enumeration in increasing size
inline int exact_gamma(const Graph& g) {
    if (g.n() > oracle_budget().gamma_n) throw TooLarge("exact_gamma: over budget");
    require(g.n() >= 1, "exact_gamma: empty graph");
    for (int s = 1; s <= g.n(); ++s) {
        bool found = detail::for_each_subset_of_size(
            g.n(), s, [&](const std::vector<int>& c) { return detail::subset_dominates(g, c); });
        if (found) return s;
    }
    throw InternalInvariantViolation("exact_gamma: V itself did not dominate");
}

// minimum connected dominating set size
inline int exact_gamma_c(const Graph& g) {
    if (g.n() > oracle_budget().gamma_n) throw TooLarge("exact_gamma_c: over budget");
    require(g.n() >= 1, "exact_gamma_c: empty graph");
    if (!is_connected(g)) throw HostDisconnected("exact_gamma_c: host graph disconnected");
    for (int s = 1; s <= g.n(); ++s) {
        bool found = detail::for_each_subset_of_size(g.n(), s, [&](const std::vector<int>& c) {
            return detail::subset_dominates(g, c) && detail::subset_connected(g, c);
        });
        if (found) return s;
    }
    throw InternalInvariantViolation("exact_gamma_c: V itself did not qualify");
}

enum class FairPattern { matching, hamilton };

struct FairOptimum {
    mpq_class best_dist2; // squared l2 distance at the optimum
    EdgeList witness;
    long long copies_checked = 0;
};

namespace detail {

inline mpq_class fair_dist2(const EdgePartition& p, const EdgeList& copy) {
    // per-class counts and targets recomputed from scratch on purpose
    std::vector<long long> counts(std::size_t(p.num_classes()), 0);
    for (auto [u, v] : copy) ++counts[std::size_t(p.color(u, v))];
    std::vector<long long> sizes = p.class_sizes();
    long long f = (long long)copy.size();
    long long g = (long long)p.host().m();
    mpq_class acc = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        mpq_class target = mpq_ratio(f * sizes[i], g);
        mpq_class diff = mpq_of(counts[i]) - target;
        acc += diff * diff;
    }
    return acc;
}

} // namespace detail

// Exact fairest copy: all perfect matchings of K_{n,n} (right-side
// permutations in lexicographic order) or all Hamilton cycles of K_n
// (vertex 0 first, second vertex below last to kill reflections).
inline FairOptimum exact_fair_optimum(const EdgePartition& p, FairPattern kind) {
    const Graph& host = p.host();
    FairOptimum out;
    bool have = false;
    auto consider = [&](const EdgeList& copy) {
        ++out.copies_checked;
        mpq_class d2 = detail::fair_dist2(p, copy);
        if (!have || d2 < out.best_dist2) {
            have = true;
            out.best_dist2 = d2;
            out.witness = copy;
        }
    };

    if (kind == FairPattern::matching) {
        int n = host.n() / 2;
        if (n > oracle_budget().matching_n) throw TooLarge("exact_fair_optimum: over budget");
        require(host.n() == 2 * n && host.m() == (std::size_t)(n) * (std::size_t)n,
                "exact_fair_optimum: host is not a complete bipartite graph");
        std::vector<int> perm(std::size_t(n), 0);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            EdgeList copy;
            for (int i = 0; i < n; ++i) copy.push_back({i, n + perm[std::size_t(i)]});
            consider(copy);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        int n = host.n();
        if (n > oracle_budget().hamilton_n) throw TooLarge("exact_fair_optimum: over budget");
        require(n >= 3, "exact_fair_optimum: Hamilton cycles need n >= 3");
        require(host.m() == (std::size_t)n * (std::size_t)(n - 1) / 2,
                "exact_fair_optimum: host is not a complete graph");
        std::vector<int> perm(std::size_t(n - 1));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            if (perm.front() > perm.back()) continue; // reflection dedup
            EdgeList copy;
            int prev = 0;
            for (int v : perm) {
                copy.push_back(norm_edge(prev, v));
                prev = v;
            }
            copy.push_back(norm_edge(prev, 0));
            std::sort(copy.begin(), copy.end());
            consider(copy);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    invariant(have, "exact_fair_optimum: no copies enumerated");
    return out;
}

namespace detail {

inline bool partition_satisfies_choices(const CoalitionInstance& inst, const Partition& parts) {
    for (const auto& block : parts)
        for (int j : block) {
            bool ok = false;
            for (int y : inst.choices[std::size_t(j)]) {
                if (std::find(block.begin(), block.end(), y) != block.end()) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
    return true;
}

inline void build_partitions(const CoalitionInstance& inst, std::vector<int>& remaining,
                             Partition& blocks, std::vector<Partition>& out) {
    if (remaining.empty()) {
        if (partition_satisfies_choices(inst, blocks)) out.push_back(blocks);
        return;
    }
    int e = remaining.front();
    std::vector<int> rest(remaining.begin() + 1, remaining.end());
    int t = (int)rest.size();
    for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
        std::vector<int> block = {e};
        std::vector<int> next;
        for (int i = 0; i < t; ++i)
            ((mask >> i) & 1ULL ? block : next).push_back(rest[std::size_t(i)]);
        blocks.push_back(std::move(block));
        build_partitions(inst, next, blocks, out);
        blocks.pop_back();
    }
}

} // namespace detail

// All acceptable partitions of a fully specified instance, built by recursive
// block construction (a different enumeration that the fast verifiers use).
inline std::vector<Partition> all_valid_partitions(const CoalitionInstance& inst) {
    validate_instance(inst, false);
    if (inst.n > oracle_budget().partition_n) throw TooLarge("all_valid_partitions: over budget");
    std::vector<int> remaining(std::size_t(inst.n), 0);
    std::iota(remaining.begin(), remaining.end(), 0);
    Partition blocks;
    std::vector<Partition> out;
    detail::build_partitions(inst, remaining, blocks, out);
    return out;
}

} // namespace extremal
