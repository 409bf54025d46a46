#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "int_or_inf.hpp"
#include "rng.hpp"

namespace extremal {

// A placement of two n-vertex graphs onto a common host vertex set [n]:
// f1[a] is the host vertex carrying vertex a of the first graph, f2 likewise.
struct Placement {
    std::vector<int> f1, f2;
};

enum class EdgeSide : std::uint8_t { first, second, both };

// Union of the two placed images, with per-edge provenance. side[] is parallel
// to host.edges(); "both" can only appear for best-effort placements that were
// allowed to overlap (edge_disjoint is false then).
struct CombinedGraph {
    Graph host;
    std::vector<EdgeSide> side;
    bool edge_disjoint = true;

    EdgeSide side_of(int u, int v) const {
        Edge e = norm_edge(u, v);
        const auto& es = host.edges();
        auto it = std::lower_bound(es.begin(), es.end(), e);
        require(it != es.end() && *it == e, "CombinedGraph::side_of: edge not present");
        return side[std::size_t(it - es.begin())];
    }
};

namespace detail {

struct EdgeKey {
    std::size_t operator()(const Edge& e) const {
        return std::size_t(e.first) * 1000003u + std::size_t(e.second);
    }
};

inline EdgeList place_edges(const Graph& g, const std::vector<int>& f) {
    EdgeList out;
    out.reserve(g.m());
    for (auto [a, b] : g.edges()) out.push_back(norm_edge(f[std::size_t(a)], f[std::size_t(b)]));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline CombinedGraph build_combined(const Graph& g1, const Graph& g2, const Placement& pl) {
    require(g1.n() == g2.n(), "build_combined: vertex counts differ");
    EdgeList e1 = detail::place_edges(g1, pl.f1);
    EdgeList e2 = detail::place_edges(g2, pl.f2);
    EdgeList all;
    std::vector<EdgeSide> side;
    std::size_t i = 0, j = 0;
    bool disjoint = true;
    while (i < e1.size() || j < e2.size()) {
        if (j == e2.size() || (i < e1.size() && e1[i] < e2[j])) {
            all.push_back(e1[i++]);
            side.push_back(EdgeSide::first);
        } else if (i == e1.size() || e2[j] < e1[i]) {
            all.push_back(e2[j++]);
            side.push_back(EdgeSide::second);
        } else {
            all.push_back(e1[i]);
            side.push_back(EdgeSide::both);
            disjoint = false;
            ++i, ++j;
        }
    }
    CombinedGraph cg;
    cg.host = Graph(g1.n(), all);
    cg.side = std::move(side);
    cg.edge_disjoint = disjoint;
    return cg;
}

// Largest k whose radius-k ball bound stays under n:
//   1 + (d1+d2) + (d1+d2)(d1+d2-1) + ... + (d1+d2)(d1+d2-1)^(k-1) < n.
// Returns 0 when already 1 + (d1+d2) >= n. A graph of max degree d1+d2 has at
// most that many vertices within distance k of anything, which is what the
// girth-improvement swap needs. For d1+d2 <= 1 the sum stalls below 3, so k is
// capped at n (no larger value is ever useful for a girth target).
inline int max_k_bound(int d1, int d2, long long n) {
    require(d1 >= 0 && d2 >= 0 && n >= 1, "max_k_bound: bad parameters");
    long long D = d1 + d2;
    if (D <= 1) return (1 + D < n) ? int(n) : 0;
    long long sum = 1, term = D;
    int k = 0;
    while (k < n) {
        if (sum >= n - term) break; // sum + term >= n, without overflow
        sum += term;
        ++k;
        if (term > n) break; // next term alone already exceeds n
        term *= (D - 1);
    }
    return k;
}

namespace detail {

using EdgeSet = std::unordered_set<Edge, EdgeKey>;

inline long long count_conflicts(const EdgeList& e1, const EdgeSet& img2) {
    long long c = 0;
    for (const Edge& e : e1) c += img2.count(e);
    return c;
}

// One conflict-elimination pass from a fresh random placement. Swaps the first
// image's preimages of a conflict endpoint u and a candidate w whenever that
// strictly lowers the number of edges the two images share. Returns the
// placement on success, nothing on a stall.
inline std::optional<Placement> conflict_elimination_round(const Graph& g1, const Graph& g2,
                                                           SplitMix64& rng) {
    int n = g1.n();
    Placement pl;
    pl.f1.resize(std::size_t(n));
    pl.f2.resize(std::size_t(n));
    for (int v = 0; v < n; ++v) pl.f1[std::size_t(v)] = pl.f2[std::size_t(v)] = v;
    rng.shuffle(pl.f1);
    rng.shuffle(pl.f2);

    EdgeSet img2;
    for (auto [a, b] : g2.edges())
        img2.insert(norm_edge(pl.f2[std::size_t(a)], pl.f2[std::size_t(b)]));

    std::vector<int> inv1(std::size_t(n), -1);
    for (int a = 0; a < n; ++a) inv1[std::size_t(pl.f1[std::size_t(a)])] = a;

    auto conflicts_at = [&](int host_u) {
        // shared edges among the first image's edges at host vertex host_u
        int a = inv1[std::size_t(host_u)];
        long long c = 0;
        for (int b : g1.neighbors(a))
            c += img2.count(norm_edge(host_u, pl.f1[std::size_t(b)]));
        return c;
    };

    for (;;) {
        EdgeList conflict_edges;
        for (auto [a, b] : g1.edges()) {
            Edge e = norm_edge(pl.f1[std::size_t(a)], pl.f1[std::size_t(b)]);
            if (img2.count(e)) conflict_edges.push_back(e);
        }
        if (conflict_edges.empty()) return pl;
        std::sort(conflict_edges.begin(), conflict_edges.end());

        bool improved = false;
        for (const Edge& ce : conflict_edges) {
            for (int u : {ce.first, ce.second}) {
                int a_u = inv1[std::size_t(u)];
                for (int w = 0; w < n && !improved; ++w) {
                    if (w == u) continue;
                    int a_w = inv1[std::size_t(w)];
                    long long before = conflicts_at(u) + conflicts_at(w) -
                                       (g1.has_edge(a_u, a_w)
                                            ? img2.count(norm_edge(u, w))
                                            : 0); // shared incident edge counted once
                    // trial swap
                    std::swap(pl.f1[std::size_t(a_u)], pl.f1[std::size_t(a_w)]);
                    std::swap(inv1[std::size_t(u)], inv1[std::size_t(w)]);
                    long long after = conflicts_at(u) + conflicts_at(w) -
                                      (g1.has_edge(a_u, a_w) ? img2.count(norm_edge(u, w)) : 0);
                    if (after < before) {
                        improved = true;
                    } else {
                        std::swap(pl.f1[std::size_t(a_u)], pl.f1[std::size_t(a_w)]);
                        std::swap(inv1[std::size_t(u)], inv1[std::size_t(w)]);
                    }
                }
                if (improved) break;
            }
            if (improved) break;
        }
        if (!improved) return std::nullopt; // stall; caller restarts
    }
}

} // namespace detail

// Best-effort conflict elimination with seeded restarts. Gives up (nullopt)
// only if every restart stalls.
inline std::optional<Placement> try_eliminate_conflicts(const Graph& g1, const Graph& g2,
                                                        std::uint64_t seed, int restarts = 64) {
    require(g1.n() == g2.n(), "try_eliminate_conflicts: vertex counts differ");
    require(g1.n() >= 1, "try_eliminate_conflicts: empty host");
    for (int r = 0; r < restarts; ++r) {
        SplitMix64 rng = SplitMix64::for_trial(seed, std::uint64_t(r));
        if (auto pl = detail::conflict_elimination_round(g1, g2, rng)) return pl;
    }
    return std::nullopt;
}

// Edge-disjoint placement of two graphs on a common vertex set, guaranteed to
// exist when 2*maxdeg(g1)*maxdeg(g2) < n. Outside that regime the demand may
// be unsatisfiable, so the hint error is raised up front; callers that want a
// best-effort attempt anyway use try_eliminate_conflicts directly.
inline Placement sauer_spencer_pack(const Graph& g1, const Graph& g2, std::uint64_t seed) {
    require(g1.n() == g2.n(), "sauer_spencer_pack: vertex counts differ");
    long long n = g1.n();
    if (2LL * g1.max_degree() * g2.max_degree() >= n)
        throw PackingInfeasibleHint("sauer_spencer_pack: 2*d1*d2 >= n; packing not guaranteed");
    auto pl = try_eliminate_conflicts(g1, g2, seed);
    invariant(pl.has_value(),
              "sauer_spencer_pack: restarts exhausted although 2*d1*d2 < n holds");
    return *pl;
}

// Count of simple cycles of length exactly len. DFS rooted at each vertex s,
// visiting only vertices > s so each cycle is seen once per direction; the
// total is halved at the end.
inline long long count_cycles_of_length(const Graph& g, int len) {
    require(len >= 3, "count_cycles_of_length: len must be >= 3");
    long long twice = 0;
    std::vector<char> used(std::size_t(g.n()), 0);
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        used[std::size_t(s)] = 1;
        stack.assign(1, s);
        // iterative DFS with explicit neighbor cursors
        std::vector<std::size_t> cursor{0};
        while (!stack.empty()) {
            int cur = stack.back();
            const auto& nb = g.neighbors(cur);
            if (int(stack.size()) == len) {
                if (g.has_edge(cur, s)) ++twice;
                used[std::size_t(cur)] = 0;
                stack.pop_back();
                cursor.pop_back();
                continue;
            }
            bool descended = false;
            while (cursor.back() < nb.size()) {
                int y = nb[cursor.back()++];
                if (y <= s || used[std::size_t(y)]) continue;
                used[std::size_t(y)] = 1;
                stack.push_back(y);
                cursor.push_back(0);
                descended = true;
                break;
            }
            if (!descended && int(stack.size()) < len) {
                if (stack.size() > 1) used[std::size_t(cur)] = 0;
                stack.pop_back();
                cursor.pop_back();
            }
        }
        used[std::size_t(s)] = 0;
    }
    invariant(twice % 2 == 0, "count_cycles_of_length: direction pairing broke");
    return twice / 2;
}

struct GirthStep {
    long long deficit;     // target - girth, floored at 0 (infinite girth counts as target met)
    long long cycle_count; // number of shortest cycles while deficit > 0, else 0
    int swapped_u = -1, swapped_v = -1;
};

struct GirthTrace {
    long long target = 0;
    std::vector<GirthStep> steps; // state before each swap plus the final state
    std::size_t iterations() const { return steps.empty() ? 0 : steps.size() - 1; }
};

namespace detail {

inline GirthStep measure_girth_state(const Graph& host, long long target) {
    GirthStep st;
    IntOrInf m = girth(host, IntOrInf(target));
    if (m.is_infinite()) {
        st.deficit = 0;
        st.cycle_count = 0;
    } else {
        st.deficit = target - m.value();
        st.cycle_count = count_cycles_of_length(host, int(m.value()));
    }
    return st;
}

} // namespace detail

// Girth-improvement local search. Both input graphs must have girth >= g (an
// infinite g means they are forests) and the placement must be edge-disjoint.
// While the combined girth m is below min{g,k}: take the canonical shortest
// cycle C, pick the first vertex u on C whose two incident C-edges come from
// different images, pick the smallest-index vertex v at combined distance
// >= k+1 from u (the radius-k ball has < n vertices by the max_k_bound
// inequality, so v exists), and exchange the first-image preimages of u and v.
// Each swap must lower (deficit, #shortest-cycles) lexicographically.
inline Placement improve_girth(const Graph& g1, const Graph& g2, Placement pl, IntOrInf g, int k,
                               GirthTrace* trace = nullptr) {
    int n = g1.n();
    require(g2.n() == n, "improve_girth: vertex counts differ");
    long long target = min(g, IntOrInf(k)).is_infinite()
                           ? (long long)n + 1
                           : min(g, IntOrInf(k)).value();
    if (trace) {
        trace->target = target;
        trace->steps.clear();
    }

    std::vector<int> inv1(std::size_t(n), -1);
    CombinedGraph cg = build_combined(g1, g2, pl);
    require(cg.edge_disjoint, "improve_girth: placement is not edge-disjoint");

    GirthStep state = detail::measure_girth_state(cg.host, target);
    long long guard = 4LL * n + 16; // hard stop well past the claimed < n iterations
    for (long long iter = 0;; ++iter) {
        invariant(iter <= guard, "improve_girth: runaway iteration count");
        if (state.deficit == 0) {
            if (trace) trace->steps.push_back(state);
            return pl;
        }
        int m = int(target - state.deficit);
        Cycle c = *shortest_cycle(cg.host); // deficit > 0, so one exists
        invariant(c.length() == m, "improve_girth: witness length mismatch");

        int u = -1;
        for (int i = 0; i < c.length(); ++i) {
            int prev = c.vertices[std::size_t((i + c.length() - 1) % c.length())];
            int cur = c.vertices[std::size_t(i)];
            int next = c.vertices[std::size_t((i + 1) % c.length())];
            EdgeSide a = cg.side_of(prev, cur);
            EdgeSide b = cg.side_of(cur, next);
            if (a != b) {
                u = cur;
                break;
            }
        }
        invariant(u >= 0, "improve_girth: cycle shorter than both girths uses one image only");

        auto dist = bfs_distances(cg.host, u);
        int v = -1;
        for (int cand = 0; cand < n; ++cand)
            if (dist[std::size_t(cand)] >= IntOrInf(k + 1)) {
                v = cand;
                break;
            }
        invariant(v >= 0, "improve_girth: no vertex beyond distance k; ball bound violated");

        for (int a = 0; a < n; ++a) inv1[std::size_t(pl.f1[std::size_t(a)])] = a;
        std::swap(pl.f1[std::size_t(inv1[std::size_t(u)])],
                  pl.f1[std::size_t(inv1[std::size_t(v)])]);

        cg = build_combined(g1, g2, pl);
        invariant(cg.edge_disjoint, "improve_girth: swap broke edge-disjointness");
        GirthStep next_state = detail::measure_girth_state(cg.host, target);
        bool decreased = next_state.deficit < state.deficit ||
                         (next_state.deficit == state.deficit &&
                          next_state.cycle_count < state.cycle_count);
        invariant(decreased, "improve_girth: swap failed to reduce (deficit, cycle count)");
        state.swapped_u = u;
        state.swapped_v = v;
        if (trace) trace->steps.push_back(state);
        state = next_state;
    }
}

struct PackResult {
    Placement placement;
    CombinedGraph combined;
    int k = 0;                 // max_k_bound value for the inputs
    long long target = 0;      // min{g, k}, the certified girth lower bound
    IntOrInf girth_achieved;   // recomputed on the final host
    GirthTrace trace;
};

// Full pipeline: conflict elimination, then girth improvement when the target
// asks for more than any simple graph gives for free. When 2*d1*d2 >= n the
// ball bound forces k <= 1, the girth demand is vacuous, and any placement is
// acceptable; edge-disjointness is still attempted but not required there.
inline PackResult pack_high_girth(const Graph& g1, const Graph& g2, std::uint64_t seed) {
    int n = g1.n();
    require(g2.n() == n, "pack_high_girth: vertex counts differ");
    require(n >= 1, "pack_high_girth: empty host");

    int d1 = g1.max_degree(), d2 = g2.max_degree();
    PackResult res;
    res.k = max_k_bound(d1, d2, n);
    IntOrInf g = min(girth(g1), girth(g2)); // infinite for forests
    res.target = min(g, IntOrInf(res.k)).is_infinite() ? (long long)n + 1
                                                       : min(g, IntOrInf(res.k)).value();

    bool guaranteed = 2LL * d1 * d2 < n;
    auto pl = try_eliminate_conflicts(g1, g2, seed);
    if (guaranteed) invariant(pl.has_value(), "pack_high_girth: packing regime but no packing");
    if (!pl) {
        // degenerate regime, k <= 1: nothing to certify beyond producing a placement
        invariant(res.target <= 1, "pack_high_girth: stalled although target demands work");
        Placement ident;
        ident.f1.resize(std::size_t(n));
        ident.f2.resize(std::size_t(n));
        for (int v = 0; v < n; ++v) ident.f1[std::size_t(v)] = ident.f2[std::size_t(v)] = v;
        pl = ident;
    }

    res.placement = *pl;
    if (res.target >= 3 && build_combined(g1, g2, res.placement).edge_disjoint)
        res.placement = improve_girth(g1, g2, res.placement, g, res.k, &res.trace);

    res.combined = build_combined(g1, g2, res.placement);
    res.girth_achieved = girth(res.combined.host);
    invariant(res.girth_achieved >= IntOrInf(res.target) || res.girth_achieved.is_infinite(),
              "pack_high_girth: final girth below certified target");
    return res;
}

struct HamiltonUnionResult {
    Graph host;
    std::vector<EdgeList> layers; // each a Hamilton cycle on the host
    long long claimed_girth = 0;  // min over applications of min{g, k}
    IntOrInf girth_achieved;
};

// d edge-disjoint Hamilton cycles on n vertices with certified girth: start
// from the plain cycle 0..n-1 and repeatedly pack one more copy of C_n onto
// the union. Each application remaps the layers built so far through the
// first-image placement. Feasibility needs 2 * (2(i-1)) * 2 < n at step i.
inline HamiltonUnionResult hamilton_union_high_girth(int n, int d, std::uint64_t seed) {
    require(n >= 3, "hamilton_union_high_girth: need n >= 3");
    require(d >= 1, "hamilton_union_high_girth: need d >= 1");
    if (d >= 2 && 8LL * (d - 1) >= n)
        throw InfeasibleParameters(
            "hamilton_union_high_girth: need 8*(d-1) < n for every application");

    HamiltonUnionResult res;
    EdgeList base;
    for (int i = 0; i < n; ++i) base.push_back(norm_edge(i, (i + 1) % n));
    res.layers.push_back(base);
    res.host = Graph(n, base);
    res.claimed_girth = n;

    Graph ring = Graph::cycle(n);
    for (int step = 2; step <= d; ++step) {
        PackResult pr = pack_high_girth(res.host, ring, seed ^ std::uint64_t(step));
        invariant(pr.combined.edge_disjoint, "hamilton_union_high_girth: overlap in layers");
        std::vector<EdgeList> remapped;
        for (const EdgeList& layer : res.layers) {
            EdgeList el;
            el.reserve(layer.size());
            for (auto [a, b] : layer)
                el.push_back(norm_edge(pr.placement.f1[std::size_t(a)],
                                       pr.placement.f1[std::size_t(b)]));
            remapped.push_back(std::move(el));
        }
        EdgeList fresh;
        for (int i = 0; i < n; ++i)
            fresh.push_back(norm_edge(pr.placement.f2[std::size_t(i)],
                                      pr.placement.f2[std::size_t((i + 1) % n)]));
        remapped.push_back(std::move(fresh));
        res.layers = std::move(remapped);
        res.host = pr.combined.host;
        res.claimed_girth = std::min(res.claimed_girth, pr.target);
    }
    res.girth_achieved = girth(res.host);
    invariant(res.girth_achieved >= IntOrInf(res.claimed_girth),
              "hamilton_union_high_girth: girth fell below the running bound");
    return res;
}

} // namespace extremal
