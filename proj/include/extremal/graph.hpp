#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "int_or_inf.hpp"

namespace extremal {

using Edge = std::pair<int, int>; // stored normalized u < v
using EdgeList = std::vector<Edge>;

inline Edge norm_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple undirected graph, immutable once built. Adjacency lists are kept
// sorted; loops and repeated edges are rejected at construction.
class Graph {
  public:
    Graph() : n_(0) {}

    Graph(int n, const EdgeList& edges) : n_(n), adj_(std::size_t(std::max(n, 0))) {
        require(n >= 0, "Graph: negative vertex count");
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) {
            require(u >= 0 && u < n && v >= 0 && v < n, "Graph: edge endpoint out of range");
            require(u != v, "Graph: self-loop");
            edges_.push_back(norm_edge(u, v));
        }
        std::sort(edges_.begin(), edges_.end());
        require(std::adjacent_find(edges_.begin(), edges_.end()) == edges_.end(),
                "Graph: repeated edge");
        for (auto [u, v] : edges_) {
            adj_[std::size_t(u)].push_back(v);
            adj_[std::size_t(v)].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    static Graph cycle(int n) {
        require(n >= 3, "Graph::cycle: need n >= 3");
        EdgeList e;
        for (int i = 0; i < n; ++i) e.push_back(norm_edge(i, (i + 1) % n));
        return Graph(n, e);
    }

    static Graph complete(int n) {
        EdgeList e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) e.push_back({u, v});
        return Graph(n, e);
    }

    // sides 0..a-1 and a..a+b-1
    static Graph complete_bipartite(int a, int b) {
        EdgeList e;
        for (int u = 0; u < a; ++u)
            for (int v = 0; v < b; ++v) e.push_back({u, a + v});
        return Graph(a + b, e);
    }

    int n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    const std::vector<int>& neighbors(int v) const { return adj_[std::size_t(v)]; }
    const EdgeList& edges() const { return edges_; }

    bool has_edge(int u, int v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
        const auto& a = adj_[std::size_t(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int degree(int v) const { return int(adj_[std::size_t(v)].size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& a : adj_) d = std::max(d, int(a.size()));
        return d;
    }

    int min_degree() const {
        if (n_ == 0) return 0;
        int d = int(adj_[0].size());
        for (const auto& a : adj_) d = std::min(d, int(a.size()));
        return d;
    }

  private:
    int n_;
    std::vector<std::vector<int>> adj_;
    EdgeList edges_;
};

// Directed graph; arc u->v. No self-arcs, no repeated arcs.
class Digraph {
  public:
    Digraph() : n_(0) {}

    Digraph(int n, const std::vector<std::pair<int, int>>& arcs)
        : n_(n), out_(std::size_t(std::max(n, 0))) {
        require(n >= 0, "Digraph: negative vertex count");
        for (auto [u, v] : arcs) {
            require(u >= 0 && u < n && v >= 0 && v < n, "Digraph: arc endpoint out of range");
            require(u != v, "Digraph: self-arc");
            out_[std::size_t(u)].push_back(v);
        }
        for (auto& a : out_) {
            std::sort(a.begin(), a.end());
            require(std::adjacent_find(a.begin(), a.end()) == a.end(), "Digraph: repeated arc");
        }
    }

    int n() const { return n_; }
    const std::vector<int>& out_neighbors(int v) const { return out_[std::size_t(v)]; }
    int out_degree(int v) const { return int(out_[std::size_t(v)].size()); }

    int min_out_degree() const {
        if (n_ == 0) return 0;
        int d = out_degree(0);
        for (int v = 0; v < n_; ++v) d = std::min(d, out_degree(v));
        return d;
    }

    std::size_t arc_count() const {
        std::size_t m = 0;
        for (const auto& a : out_) m += a.size();
        return m;
    }

    bool has_arc(int u, int v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
        const auto& a = out_[std::size_t(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

  private:
    int n_;
    std::vector<std::vector<int>> out_;
};

// A cycle as the vertex sequence v0, v1, ..., v_{L-1} (closing edge back to v0
// implied). Undirected cycles need length >= 3, directed ones length >= 2.
struct Cycle {
    std::vector<int> vertices;

    int length() const { return int(vertices.size()); }

    bool valid_in(const Graph& g) const {
        if (vertices.size() < 3) return false;
        std::vector<int> sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (!g.has_edge(vertices[i], vertices[(i + 1) % vertices.size()])) return false;
        return true;
    }

    bool valid_in(const Digraph& d) const {
        if (vertices.size() < 2) return false;
        std::vector<int> sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (!d.has_arc(vertices[i], vertices[(i + 1) % vertices.size()])) return false;
        return true;
    }
};

inline std::vector<IntOrInf> bfs_distances(const Graph& g, int source) {
    require(source >= 0 && source < g.n(), "bfs_distances: source out of range");
    std::vector<long long> dist(std::size_t(g.n()), -1);
    std::deque<int> q{source};
    dist[std::size_t(source)] = 0;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : g.neighbors(x))
            if (dist[std::size_t(y)] < 0) {
                dist[std::size_t(y)] = dist[std::size_t(x)] + 1;
                q.push_back(y);
            }
    }
    std::vector<IntOrInf> out(std::size_t(g.n()), IntOrInf::infinity());
    for (int v = 0; v < g.n(); ++v)
        if (dist[std::size_t(v)] >= 0) out[std::size_t(v)] = dist[std::size_t(v)];
    return out;
}

// Girth by one BFS per start vertex. Any non-tree edge (x,y) seen from root r
// closes a walk of length dist(x)+dist(y)+1 through r, which contains a cycle
// no longer than that; when r lies on a shortest cycle the bound is attained,
// so the minimum over roots is exact. BFS stops expanding a vertex once even
// the best closure through it could not beat what we already have.
//
// Cycles of length >= cap are ignored when cap is finite; if nothing shorter
// exists the result is reported as infinity.
inline IntOrInf girth(const Graph& g, IntOrInf cap = IntOrInf::infinity()) {
    long long best = -1; // -1 = none found yet
    bool capped = cap.is_finite();
    std::vector<long long> dist(std::size_t(g.n()));
    std::vector<int> parent(std::size_t(g.n()));
    std::vector<int> queue;
    queue.reserve(std::size_t(g.n()));
    for (int r = 0; r < g.n(); ++r) {
        long long limit = best >= 0 ? best : (capped ? cap.value() : -1);
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        queue.push_back(r);
        dist[std::size_t(r)] = 0;
        parent[std::size_t(r)] = -1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int x = queue[head];
            // cheapest closure through x would be 2*dist(x)+1
            if (limit >= 0 && 2 * dist[std::size_t(x)] + 1 >= limit) break;
            for (int y : g.neighbors(x)) {
                if (dist[std::size_t(y)] < 0) {
                    dist[std::size_t(y)] = dist[std::size_t(x)] + 1;
                    parent[std::size_t(y)] = x;
                    queue.push_back(y);
                } else if (y != parent[std::size_t(x)]) {
                    long long len = dist[std::size_t(x)] + dist[std::size_t(y)] + 1;
                    if (len < limit || limit < 0) {
                        best = len;
                        limit = len;
                    }
                }
            }
        }
    }
    if (best < 0 || (capped && best >= cap.value())) return IntOrInf::infinity();
    return best;
}

namespace detail {

// lexicographic DFS for a cycle of exact length len whose smallest vertex is s;
// dist_s prunes branches that cannot close in time
inline bool lex_cycle_dfs(const Graph& g, int s, int len, std::vector<int>& path,
                          std::vector<char>& used, const std::vector<IntOrInf>& dist_s) {
    int cur = path.back();
    int remaining = len - int(path.size());
    if (remaining == 0) return g.has_edge(cur, s);
    for (int y : g.neighbors(cur)) {
        if (y <= s || used[std::size_t(y)]) continue;
        if (dist_s[std::size_t(y)].is_infinite() || dist_s[std::size_t(y)].value() > remaining)
            continue;
        used[std::size_t(y)] = 1;
        path.push_back(y);
        if (lex_cycle_dfs(g, s, len, path, used, dist_s)) return true;
        path.pop_back();
        used[std::size_t(y)] = 0;
    }
    return false;
}

} // namespace detail

// Canonical shortest cycle: among all cycles of minimum length, the one whose
// starting vertex is smallest and whose vertex sequence is lexicographically
// least (the DFS scans neighbors in increasing order, so the first hit is it).
inline std::optional<Cycle> shortest_cycle(const Graph& g) {
    IntOrInf girth_len = girth(g);
    if (girth_len.is_infinite()) return std::nullopt;
    int len = int(girth_len.value());
    for (int s = 0; s < g.n(); ++s) {
        auto dist_s = bfs_distances(g, s);
        std::vector<int> path{s};
        std::vector<char> used(std::size_t(g.n()), 0);
        used[std::size_t(s)] = 1;
        if (detail::lex_cycle_dfs(g, s, len, path, used, dist_s)) return Cycle{path};
    }
    // girth() said a cycle exists, so reaching here means the two disagree
    throw InternalInvariantViolation("shortest_cycle: no witness for computed girth");
}

// Components sorted internally and ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<char> seen(std::size_t(g.n()), 0);
    std::vector<std::vector<int>> comps;
    for (int r = 0; r < g.n(); ++r) {
        if (seen[std::size_t(r)]) continue;
        std::vector<int> comp{r};
        seen[std::size_t(r)] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (int y : g.neighbors(comp[head]))
                if (!seen[std::size_t(y)]) {
                    seen[std::size_t(y)] = 1;
                    comp.push_back(y);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const Graph& g) {
    return g.n() <= 1 || connected_components(g).size() == 1;
}

inline bool is_dominating(const Graph& g, const std::vector<int>& s) {
    std::vector<char> dom(std::size_t(g.n()), 0);
    for (int v : s) {
        require(v >= 0 && v < g.n(), "is_dominating: vertex out of range");
        dom[std::size_t(v)] = 1;
        for (int y : g.neighbors(v)) dom[std::size_t(y)] = 1;
    }
    for (char d : dom)
        if (!d) return false;
    return true;
}

// Components of the induced subgraph G[s], reported with host labels.
inline std::vector<std::vector<int>> induced_components(const Graph& g,
                                                        const std::vector<int>& s) {
    std::vector<char> in(std::size_t(g.n()), 0);
    for (int v : s) {
        require(v >= 0 && v < g.n(), "induced_components: vertex out of range");
        in[std::size_t(v)] = 1;
    }
    std::vector<char> seen(std::size_t(g.n()), 0);
    std::vector<std::vector<int>> comps;
    std::vector<int> roots = s;
    std::sort(roots.begin(), roots.end());
    for (int r : roots) {
        if (seen[std::size_t(r)]) continue;
        std::vector<int> comp{r};
        seen[std::size_t(r)] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (int y : g.neighbors(comp[head]))
                if (in[std::size_t(y)] && !seen[std::size_t(y)]) {
                    seen[std::size_t(y)] = 1;
                    comp.push_back(y);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// degree of v inside the set marked by `in`
inline int degree_within(const Graph& g, int v, const std::vector<char>& in) {
    int d = 0;
    for (int y : g.neighbors(v))
        if (in[std::size_t(y)]) ++d;
    return d;
}

} // namespace extremal
