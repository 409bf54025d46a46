#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "rational.hpp"
#include "graph.hpp"

namespace extremal {

// Host graph whose edge set is split into m color classes. Colors are dense
// ints 0..m-1; every host edge has exactly one.
class EdgePartition {
  public:
    EdgePartition(Graph host, int num_classes, std::vector<int> edge_colors)
        : host_(std::move(host)), m_(num_classes), color_(std::move(edge_colors)) {
        require(m_ >= 1, "EdgePartition: need at least one class");
        require(color_.size() == host_.m(),
                "EdgePartition: need one color per host edge");
        for (int c : color_)
            require(c >= 0 && c < m_, "EdgePartition: color out of range");
    }

    static EdgePartition from_color_map(Graph host, int num_classes,
                                        const std::map<Edge, int>& colors) {
        std::vector<int> per_edge;
        per_edge.reserve(host.m());
        for (const Edge& e : host.edges()) {
            auto it = colors.find(e);
            require(it != colors.end(), "EdgePartition: host edge missing a color");
            per_edge.push_back(it->second);
        }
        require(colors.size() == host.m(), "EdgePartition: color map lists unknown edges");
        return EdgePartition(std::move(host), num_classes, std::move(per_edge));
    }

    const Graph& host() const { return host_; }
    int num_classes() const { return m_; }

    int color(int u, int v) const {
        Edge e = norm_edge(u, v);
        const auto& es = host_.edges();
        auto it = std::lower_bound(es.begin(), es.end(), e);
        if (it == es.end() || *it != e) throw EdgeNotInHost("EdgePartition: edge not in host");
        return color_[std::size_t(it - es.begin())];
    }

    std::vector<long long> class_sizes() const {
        std::vector<long long> sz(std::size_t(m_), 0);
        for (int c : color_) ++sz[std::size_t(c)];
        return sz;
    }

  private:
    Graph host_;
    int m_;
    std::vector<int> color_; // parallel to host_.edges()
};

using RepVector = std::vector<long long>; // per-class edge counts of a subgraph

inline RepVector rep_vector(const EdgePartition& p, const EdgeList& subgraph) {
    RepVector x(std::size_t(p.num_classes()), 0);
    for (auto [u, v] : subgraph) ++x[std::size_t(p.color(u, v))];
    return x;
}

// Ideal per-class counts y_i = f * |E_i| / |E| for a pattern with f edges,
// kept as exact rationals.
struct TargetVector {
    std::vector<mpq_class> y;
    long long pattern_edges = 0; // f
    long long host_edges = 0;    // g
};

inline TargetVector target_vector(const EdgePartition& p, long long pattern_edges) {
    require(pattern_edges >= 0, "target_vector: negative edge count");
    require(p.host().m() > 0, "target_vector: empty host");
    TargetVector t;
    t.pattern_edges = pattern_edges;
    t.host_edges = (long long)p.host().m();
    for (long long sz : p.class_sizes()) {
        t.y.push_back(mpq_ratio(pattern_edges * sz, t.host_edges));
    }
    return t;
}

// squared euclidean distance between integer counts x and rational target y
inline mpq_class potential(const RepVector& x, const TargetVector& t) {
    require(x.size() == t.y.size(), "potential: dimension mismatch");
    mpq_class phi = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mpq_class d = mpq_of(x[i]) - t.y[i];
        phi += d * d;
    }
    return phi;
}

struct NeighborMove {
    EdgeList removed, added;
};

// visitor returns false to stop enumeration early
using MoveVisitor = std::function<bool(const NeighborMove&)>;

struct CoverNeighborhood {
    std::string name;
    int width = 0; // max new-edge count of any member (the cover parameter s)
    std::function<void(const EdgeList& current, const MoveVisitor&)> enumerate;
};

inline long long neighborhood_size(const CoverNeighborhood& nb, const EdgeList& current) {
    long long count = 0;
    nb.enumerate(current, [&](const NeighborMove&) {
        ++count;
        return true;
    });
    return count;
}

// ---- perfect matchings of K_{n,n} (left side 0..n-1, right side n..2n-1) ----

inline EdgeList identity_matching(int n) {
    EdgeList m;
    for (int i = 0; i < n; ++i) m.push_back({i, n + i});
    return m;
}

// Two-swap moves: pick left vertices i < j and exchange their partners.
// C(n,2) members; every matching edge sits in n-1 of them and every
// off-matching host edge in exactly 1, a uniform cover of width 2.
inline CoverNeighborhood matching_neighborhood(int n) {
    require(n >= 2, "matching_neighborhood: need n >= 2");
    CoverNeighborhood nb;
    nb.name = "matching-2-swap";
    nb.width = 2;
    nb.enumerate = [n](const EdgeList& current, const MoveVisitor& visit) {
        require((int)current.size() == n, "matching move: wrong edge count");
        std::vector<int> partner(std::size_t(n), -1);
        for (auto [u, v] : current) {
            require(u >= 0 && u < n && v >= n && v < 2 * n, "matching move: not a K_nn matching");
            require(partner[std::size_t(u)] < 0, "matching move: left vertex reused");
            partner[std::size_t(u)] = v;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                NeighborMove mv;
                mv.removed = {{i, partner[std::size_t(i)]}, {j, partner[std::size_t(j)]}};
                mv.added = {{i, partner[std::size_t(j)]}, {j, partner[std::size_t(i)]}};
                if (!visit(mv)) return;
            }
    };
    return nb;
}

// ---- Hamilton cycles of K_n ----

inline EdgeList canonical_cycle_edges(int n) {
    EdgeList e;
    for (int i = 0; i < n; ++i) e.push_back(norm_edge(i, (i + 1) % n));
    return e;
}

namespace detail {

// rebuild a traversal order from a cycle's edge list, starting at vertex 0 and
// moving toward its smaller neighbor
inline std::vector<int> cycle_order(const EdgeList& edges, int n) {
    std::vector<std::vector<int>> adj(std::size_t(n), std::vector<int>{});
    for (auto [u, v] : edges) {
        require(u >= 0 && u < n && v >= 0 && v < n, "cycle_order: vertex out of range");
        adj[std::size_t(u)].push_back(v);
        adj[std::size_t(v)].push_back(u);
    }
    for (auto& a : adj) {
        require(a.size() == 2, "cycle_order: not 2-regular");
        std::sort(a.begin(), a.end());
    }
    std::vector<int> order{0, adj[0][0]};
    while ((int)order.size() < n) {
        int cur = order.back(), prev = order[order.size() - 2];
        int nxt = adj[std::size_t(cur)][0] == prev ? adj[std::size_t(cur)][1]
                                                   : adj[std::size_t(cur)][0];
        require(nxt != 0 || (int)order.size() == n, "cycle_order: not a single cycle");
        order.push_back(nxt);
    }
    require(adj[std::size_t(order.back())][0] == 0 || adj[std::size_t(order.back())][1] == 0,
            "cycle_order: endpoints do not close");
    return order;
}

} // namespace detail

// 2-opt moves: remove two vertex-disjoint cycle edges (v_i v_{i+1}, v_j v_{j+1})
// and reconnect as (v_i v_j, v_{i+1} v_{j+1}), reversing the middle run.
// n(n-3)/2 members, width 2.
inline CoverNeighborhood hamilton_neighborhood(int n) {
    require(n >= 5, "hamilton_neighborhood: need n >= 5");
    CoverNeighborhood nb;
    nb.name = "hamilton-2-opt";
    nb.width = 2;
    nb.enumerate = [n](const EdgeList& current, const MoveVisitor& visit) {
        require((int)current.size() == n, "hamilton move: wrong edge count");
        std::vector<int> v = detail::cycle_order(current, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue; // adjacent around the wrap
                NeighborMove mv;
                int a = v[std::size_t(i)], b = v[std::size_t((i + 1) % n)];
                int c = v[std::size_t(j)], d = v[std::size_t((j + 1) % n)];
                mv.removed = {norm_edge(a, b), norm_edge(c, d)};
                mv.added = {norm_edge(a, c), norm_edge(b, d)};
                if (!visit(mv)) return;
            }
    };
    return nb;
}

// ---- T-factors of K_n ----

// small fixed pattern on vertices 0..t-1
struct PatternGraph {
    std::string name;
    int t = 0;
    EdgeList edges;

    static PatternGraph k2() { return {"K2", 2, {{0, 1}}}; }
    static PatternGraph k3() { return {"K3", 3, {{0, 1}, {0, 2}, {1, 2}}}; }
    static PatternGraph p3() { return {"P3", 3, {{0, 1}, {1, 2}}}; }

    int q() const { return int(edges.size()); }
};

namespace detail {

// distinct edge sets of T placed on positions 0..t-1 (t! maps, duplicates
// from automorphisms removed)
inline std::vector<EdgeList> pattern_templates(const PatternGraph& T) {
    std::vector<int> perm(std::size_t(T.t));
    for (int i = 0; i < T.t; ++i) perm[std::size_t(i)] = i;
    std::set<EdgeList> seen;
    do {
        EdgeList img;
        for (auto [a, b] : T.edges)
            img.push_back(norm_edge(perm[std::size_t(a)], perm[std::size_t(b)]));
        std::sort(img.begin(), img.end());
        seen.insert(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {seen.begin(), seen.end()};
}

inline EdgeList apply_template(const EdgeList& tmpl, const std::vector<int>& verts) {
    EdgeList out;
    for (auto [a, b] : tmpl)
        out.push_back(norm_edge(verts[std::size_t(a)], verts[std::size_t(b)]));
    std::sort(out.begin(), out.end());
    return out;
}

// blocks of a T-factor, recovered as connected components of the factor's edges
inline std::vector<std::vector<int>> factor_blocks(const EdgeList& current, int n, int t) {
    require(n % t == 0, "factor_blocks: t must divide n");
    std::vector<std::vector<int>> adj(std::size_t(n), std::vector<int>{});
    for (auto [u, v] : current) {
        require(u >= 0 && u < n && v >= 0 && v < n, "factor_blocks: vertex out of range");
        adj[std::size_t(u)].push_back(v);
        adj[std::size_t(v)].push_back(u);
    }
    std::vector<char> seen(std::size_t(n), 0);
    std::vector<std::vector<int>> blocks;
    for (int r = 0; r < n; ++r) {
        if (seen[std::size_t(r)]) continue;
        std::vector<int> comp{r};
        seen[std::size_t(r)] = 1;
        for (std::size_t h = 0; h < comp.size(); ++h)
            for (int y : adj[std::size_t(comp[h])])
                if (!seen[std::size_t(y)]) {
                    seen[std::size_t(y)] = 1;
                    comp.push_back(y);
                }
        std::sort(comp.begin(), comp.end());
        require((int)comp.size() == t, "factor_blocks: component is not a block of size t");
        blocks.push_back(std::move(comp));
    }
    return blocks;
}

// every way to assign each chosen block's vertices to t transversal copies;
// the first block's assignment is fixed to kill copy-label symmetry
inline void transversal_groupings(const std::vector<std::vector<int>>& chosen, std::size_t depth,
                                  std::vector<std::vector<int>>& copies,
                                  const std::function<bool(const std::vector<std::vector<int>>&)>& emit,
                                  bool& keep_going) {
    int t = int(chosen.size());
    if (depth == chosen.size()) {
        keep_going = emit(copies);
        return;
    }
    // the first block's assignment is the identity: copies are unlabeled, so
    // permuting it would revisit each grouping t! times
    if (depth == 0) {
        for (int r = 0; r < t; ++r) copies[std::size_t(r)].push_back(chosen[0][std::size_t(r)]);
        transversal_groupings(chosen, 1, copies, emit, keep_going);
        for (int r = 0; r < t; ++r) copies[std::size_t(r)].pop_back();
        return;
    }
    std::vector<int> perm(std::size_t(t), 0);
    for (int i = 0; i < t; ++i) perm[std::size_t(i)] = i;
    do {
        for (int r = 0; r < t; ++r)
            copies[std::size_t(r)].push_back(chosen[depth][std::size_t(perm[std::size_t(r)])]);
        transversal_groupings(chosen, depth + 1, copies, emit, keep_going);
        for (int r = 0; r < t; ++r) copies[std::size_t(r)].pop_back();
        if (!keep_going) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace detail

inline EdgeList canonical_tfactor(const PatternGraph& T, int n) {
    require(T.t >= 2, "canonical_tfactor: pattern too small");
    require(n % T.t == 0, "canonical_tfactor: t must divide n");
    EdgeList out;
    for (int b = 0; b < n / T.t; ++b)
        for (auto [a, c] : T.edges) out.push_back(norm_edge(b * T.t + a, b * T.t + c));
    std::sort(out.begin(), out.end());
    return out;
}

// Moves of two kinds. Within-block: re-place T on one block (all distinct
// images). Cross-block: choose t blocks, dissolve them, and rebuild t copies
// of T on transversals (one vertex per block per copy), again over all
// distinct images per copy. Cross-block moves only exist when n/t >= t; each
// one touches at most q*t new edges, which is the cover width.
inline CoverNeighborhood tfactor_neighborhood(const PatternGraph& T, int n) {
    require(T.t >= 2, "tfactor_neighborhood: pattern too small");
    if (n % T.t != 0)
        throw InfeasibleParameters("tfactor_neighborhood: t does not divide n");
    CoverNeighborhood nb;
    nb.name = "tfactor-" + T.name;
    nb.width = T.q() * T.t;
    PatternGraph pat = T;
    nb.enumerate = [pat, n](const EdgeList& current, const MoveVisitor& visit) {
        int t = pat.t;
        auto templates = detail::pattern_templates(pat);
        auto blocks = detail::factor_blocks(current, n, t);
        int p = int(blocks.size());

        // current edges per block, for the removal side
        auto block_edges = [&](const std::vector<int>& blk) {
            std::set<int> in(blk.begin(), blk.end());
            EdgeList out;
            for (auto [u, v] : current)
                if (in.count(u) && in.count(v)) out.push_back(norm_edge(u, v));
            std::sort(out.begin(), out.end());
            return out;
        };

        for (const auto& blk : blocks)
            for (const auto& tmpl : templates) {
                NeighborMove mv;
                mv.removed = block_edges(blk);
                mv.added = detail::apply_template(tmpl, blk);
                if (!visit(mv)) return;
            }

        if (p < t) return; // no t blocks to dissolve

        std::vector<int> idx(std::size_t(t), 0);
        for (int i = 0; i < t; ++i) idx[std::size_t(i)] = i;
        // iterate t-subsets of blocks in lex order
        for (;;) {
            std::vector<std::vector<int>> chosen;
            EdgeList removed;
            for (int i : idx) {
                chosen.push_back(blocks[std::size_t(i)]);
                EdgeList be = block_edges(blocks[std::size_t(i)]);
                removed.insert(removed.end(), be.begin(), be.end());
            }
            std::sort(removed.begin(), removed.end());

            bool keep_going = true;
            std::vector<std::vector<int>> copies(std::size_t(t), std::vector<int>{});
            detail::transversal_groupings(
                chosen, 0, copies,
                [&](const std::vector<std::vector<int>>& groups) {
                    // all template choices per copy
                    std::vector<std::size_t> pick(std::size_t(t), 0);
                    for (;;) {
                        NeighborMove mv;
                        mv.removed = removed;
                        for (int r = 0; r < t; ++r) {
                            EdgeList img = detail::apply_template(
                                templates[pick[std::size_t(r)]], groups[std::size_t(r)]);
                            mv.added.insert(mv.added.end(), img.begin(), img.end());
                        }
                        std::sort(mv.added.begin(), mv.added.end());
                        if (!visit(mv)) return false;
                        int pos = t - 1;
                        while (pos >= 0 && ++pick[std::size_t(pos)] == templates.size())
                            pick[std::size_t(pos--)] = 0;
                        if (pos < 0) break;
                    }
                    return true;
                },
                keep_going);
            if (!keep_going) return;

            // next t-subset
            int pos = t - 1;
            while (pos >= 0 && idx[std::size_t(pos)] == p - t + pos) --pos;
            if (pos < 0) break;
            ++idx[std::size_t(pos)];
            for (int i = pos + 1; i < t; ++i) idx[std::size_t(i)] = idx[std::size_t(i - 1)] + 1;
        }
    };
    return nb;
}

// ---- the search itself ----

struct FairTrace {
    std::vector<mpq_class> potentials; // potential after each accepted move, incl. start
    long long moves = 0;
};

// First-improvement descent on the squared distance between the subgraph's
// per-class counts and the rational target. Neighbor enumeration order is the
// neighborhood's canonical order, so runs are deterministic. Every accepted
// move lowers the potential by at least 1/g^2 (all values share denominator
// g^2), which bounds the move count.
inline EdgeList local_search(const EdgePartition& p, const EdgeList& start,
                             const CoverNeighborhood& nb, FairTrace* trace = nullptr) {
    EdgeList current = start;
    std::sort(current.begin(), current.end());
    RepVector x = rep_vector(p, current);
    TargetVector t = target_vector(p, (long long)current.size());
    mpq_class phi = potential(x, t);
    if (trace) {
        trace->potentials.assign(1, phi);
        trace->moves = 0;
    }

    for (;;) {
        bool improved = false;
        NeighborMove chosen;
        mpq_class chosen_delta;
        nb.enumerate(current, [&](const NeighborMove& mv) {
            // delta of the squared distance, over touched classes only
            std::map<int, long long> shift;
            for (auto [u, v] : mv.removed) --shift[p.color(u, v)];
            for (auto [u, v] : mv.added) ++shift[p.color(u, v)];
            mpq_class delta = 0;
            for (auto [cls, dv] : shift) {
                if (dv == 0) continue;
                mpq_class old_d = mpq_of(x[std::size_t(cls)]) - t.y[std::size_t(cls)];
                mpq_class new_d = old_d + mpq_of(dv);
                delta += new_d * new_d - old_d * old_d;
            }
            if (delta < 0) {
                improved = true;
                chosen = mv;
                chosen_delta = delta;
                return false; // first improvement wins
            }
            return true;
        });
        if (!improved) return current;

        for (auto [u, v] : chosen.removed) {
            Edge e = norm_edge(u, v);
            auto it = std::lower_bound(current.begin(), current.end(), e);
            invariant(it != current.end() && *it == e, "local_search: removing absent edge");
            current.erase(it);
            --x[std::size_t(p.color(u, v))];
        }
        for (auto [u, v] : chosen.added) {
            Edge e = norm_edge(u, v);
            auto it = std::lower_bound(current.begin(), current.end(), e);
            invariant(it == current.end() || *it != e, "local_search: adding present edge");
            current.insert(it, e);
            ++x[std::size_t(p.color(u, v))];
        }
        phi += chosen_delta;
        invariant(phi == potential(x, t), "local_search: potential drifted");
        if (trace) {
            trace->potentials.push_back(phi);
            ++trace->moves;
        }
    }
}

// Guaranteed distance at a local optimum of a width-s uniform cover with m
// classes: (m-1) * 2^((m-2)/2) * s^m. Zero when m = 1.
inline double fairness_bound(int m, int s) {
    require(m >= 1 && s >= 1, "fairness_bound: bad parameters");
    if (m == 1) return 0.0;
    return double(m - 1) * std::exp2((double(m) - 2.0) / 2.0) * std::pow(double(s), m);
}

// The square of the same bound is an integer, (m-1)^2 * 2^(m-2) * s^(2m),
// so "distance strictly below the bound" can be decided exactly.
inline mpz_class fairness_bound_squared(int m, int s) {
    require(m >= 1 && s >= 1, "fairness_bound_squared: bad parameters");
    if (m == 1) return mpz_class(0);
    mpz_class b = mpz_class(m - 1) * mpz_class(m - 1);
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), (unsigned long)(m - 2));
    mpz_class spow;
    mpz_ui_pow_ui(spow.get_mpz_t(), (unsigned long)s, (unsigned long)(2 * m));
    return b * spow;
}

} // namespace extremal
