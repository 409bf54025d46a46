// extremal: one binary driving every algorithm in the library.
//
// Each subcommand prints a JSON run report. The rule that keeps the reports
// honest: every claim in the "bounds" section is re-checked here, in this
// file, with plain loops that do not trust the library's own bookkeeping.
// A failed re-check exits 4; bad input exits 2 (unreadable) or 3 (readable
// but out of range for the operation). Identical inputs and seed give
// byte-identical output except for the wall_time_ms line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "extremal/cds.hpp"
#include "extremal/coalition.hpp"
#include "extremal/errors.hpp"
#include "extremal/fair.hpp"
#include "extremal/graph.hpp"
#include "extremal/int_or_inf.hpp"
#include "extremal/io.hpp"
#include "extremal/oracle.hpp"
#include "extremal/packing.hpp"
#include "extremal/prob.hpp"
#include "extremal/rational.hpp"
#include "extremal/rng.hpp"

using json = nlohmann::ordered_json;
using namespace extremal;

namespace {

// A claim that fails its re-check is a bug in the program, not in the input.
void certify(bool ok, const std::string& what) {
    if (!ok) throw InternalInvariantViolation("report re-check failed: " + what);
}

json rat_json(const mpq_class& q) {
    return json{{"exact", q.get_str()}, {"approx", q.get_d()}};
}

json len_json(const IntOrInf& v) {
    if (v.is_infinite()) return json("inf");
    return json(v.value());
}

json edges_json(const EdgeList& es) {
    json a = json::array();
    for (auto [u, v] : es) a.push_back(json::array({u, v}));
    return a;
}

json file_json(const std::string& path) {
    return json{{"path", path}, {"digest", file_digest(path)}};
}

// ---- re-check primitives, deliberately written from scratch ----------------

// Shortest cycle by BFS from every root. From a root on a shortest cycle the
// scan returns exactly its length, and every candidate it produces is the
// length of some closed walk, hence >= the girth; the minimum over roots is
// therefore exact. Returns -1 when no cycle exists.
long long recheck_girth(int n, const EdgeList& edges) {
    std::vector<std::vector<int>> adj(std::size_t(n), std::vector<int>{});
    for (auto [u, v] : edges) {
        adj[std::size_t(u)].push_back(v);
        adj[std::size_t(v)].push_back(u);
    }
    long long best = -1;
    std::vector<long long> dist(std::size_t(n), -1);
    std::vector<int> parent(std::size_t(n), -1);
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        dist[std::size_t(root)] = 0;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[std::size_t(u)]) {
                if (dist[std::size_t(w)] < 0) {
                    dist[std::size_t(w)] = dist[std::size_t(u)] + 1;
                    parent[std::size_t(w)] = u;
                    q.push(w);
                } else if (w != parent[std::size_t(u)]) {
                    long long len = dist[std::size_t(u)] + dist[std::size_t(w)] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
        if (best == 3) break; // cannot get shorter in a simple graph
    }
    return best;
}

bool recheck_permutation(const std::vector<int>& f, int n) {
    if ((int)f.size() != n) return false;
    std::vector<char> seen(std::size_t(n), 0);
    for (int x : f) {
        if (x < 0 || x >= n || seen[std::size_t(x)]) return false;
        seen[std::size_t(x)] = 1;
    }
    return true;
}

bool recheck_hamilton_cycle(int n, const EdgeList& cyc) {
    if (n < 3 || (int)cyc.size() != n) return false;
    std::vector<std::vector<int>> adj(std::size_t(n), std::vector<int>{});
    std::set<Edge> seen;
    for (auto [u, v] : cyc) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
        if (!seen.insert(norm_edge(u, v)).second) return false;
        adj[std::size_t(u)].push_back(v);
        adj[std::size_t(v)].push_back(u);
    }
    for (int v = 0; v < n; ++v)
        if (adj[std::size_t(v)].size() != 2) return false;
    // walk it: degree 2 everywhere + one closed tour of length n
    int prev = -1, cur = 0, steps = 0;
    do {
        int nxt = adj[std::size_t(cur)][0] == prev ? adj[std::size_t(cur)][1]
                                                   : adj[std::size_t(cur)][0];
        prev = cur;
        cur = nxt;
        ++steps;
    } while (cur != 0 && steps <= n);
    return cur == 0 && steps == n;
}

bool recheck_dominating(const Graph& g, const std::vector<int>& s) {
    std::vector<char> in(std::size_t(g.n()), 0);
    for (int v : s) {
        if (v < 0 || v >= g.n()) return false;
        in[std::size_t(v)] = 1;
    }
    for (int v = 0; v < g.n(); ++v) {
        if (in[std::size_t(v)]) continue;
        bool hit = false;
        for (int u : g.neighbors(v))
            if (in[std::size_t(u)]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

bool recheck_connected_within(const Graph& g, const std::vector<int>& s) {
    if (s.empty()) return false;
    std::vector<char> in(std::size_t(g.n()), 0);
    for (int v : s) in[std::size_t(v)] = 1;
    std::vector<char> vis(std::size_t(g.n()), 0);
    std::queue<int> q;
    q.push(s[0]);
    vis[std::size_t(s[0])] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u))
            if (in[std::size_t(w)] && !vis[std::size_t(w)]) {
                vis[std::size_t(w)] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == s.size();
}

// Condition for a class partition to be stable: every child has a listed
// friend in its own part. Also insists the parts really partition 0..n-1.
bool recheck_partition_valid(const CoalitionInstance& inst, const Partition& parts) {
    std::vector<int> part_of(std::size_t(inst.n), -1);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].empty()) return false;
        for (int v : parts[p]) {
            if (v < 0 || v >= inst.n || part_of[std::size_t(v)] != -1) return false;
            part_of[std::size_t(v)] = (int)p;
        }
    }
    for (int v = 0; v < inst.n; ++v)
        if (part_of[std::size_t(v)] == -1) return false;
    for (int i = 0; i < inst.n; ++i) {
        if ((int)inst.choices[std::size_t(i)].size() != inst.k) return false;
        bool happy = false;
        for (int y : inst.choices[std::size_t(i)])
            if (part_of[std::size_t(y)] == part_of[std::size_t(i)]) {
                happy = true;
                break;
            }
        if (!happy) return false;
    }
    return true;
}

bool partition_splits_coalition(const CoalitionInstance& inst, const Partition& parts) {
    std::vector<int> part_of(std::size_t(inst.n), -1);
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (int v : parts[p]) part_of[std::size_t(v)] = (int)p;
    for (int i = 1; i < inst.r; ++i)
        if (part_of[std::size_t(i)] != part_of[0]) return true;
    return false;
}

// residue-multiset orthogonality test, redone digit by digit
bool recheck_kpn_covers(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<long long> cnt(std::size_t(p), 0);
    for (std::size_t i = 0; i < a.size(); ++i) ++cnt[std::size_t((a[i] + b[i]) % p)];
    long long want = (long long)a.size() / p;
    for (long long c : cnt)
        if (c != want) return false;
    return true;
}

std::vector<int> kpn_digits(long long idx, int n, int p) {
    std::vector<int> v(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        v[std::size_t(i)] = int(idx % p);
        idx /= p;
    }
    return v;
}

// ---- shared fair-representation plumbing -----------------------------------

struct FairSetup {
    Graph host;
    EdgeList start;
    CoverNeighborhood nb;
    long long pattern_edges = 0;
    std::string structure; // matching | hamilton | tfactor
    int t = 0;             // pattern piece size for tfactor
    int piece_edges = 0;
};

FairSetup make_fair_setup(const std::string& host_kind, int n, const std::string& pattern) {
    FairSetup s;
    if (host_kind == "knn") {
        s.host = Graph::complete_bipartite(n, n);
        if (pattern != "matching")
            throw InfeasibleParameters("fair: host knn only supports --pattern matching");
        s.start = identity_matching(n);
        s.nb = matching_neighborhood(n);
        s.pattern_edges = n;
        s.structure = "matching";
        return s;
    }
    if (host_kind != "kn") throw InfeasibleParameters("fair: --host must be knn or kn");
    s.host = Graph::complete(n);
    if (pattern == "hamilton") {
        s.start = canonical_cycle_edges(n);
        s.nb = hamilton_neighborhood(n);
        s.pattern_edges = n;
        s.structure = "hamilton";
        return s;
    }
    PatternGraph T;
    if (pattern == "k2")
        T = PatternGraph::k2();
    else if (pattern == "k3")
        T = PatternGraph::k3();
    else if (pattern == "p3")
        T = PatternGraph::p3();
    else
        throw InfeasibleParameters("fair: unknown pattern " + pattern);
    s.start = canonical_tfactor(T, n);
    s.nb = tfactor_neighborhood(T, n);
    s.t = T.t;
    s.piece_edges = (int)T.edges.size();
    s.pattern_edges = (long long)(n / T.t) * s.piece_edges;
    s.structure = "tfactor";
    return s;
}

// The result must still be a copy of the pattern: disjoint host edges with
// the right component shapes.
void recheck_fair_structure(const FairSetup& s, const EdgeList& result) {
    const Graph& g = s.host;
    certify((long long)result.size() == s.pattern_edges, "fair: result edge count");
    std::set<Edge> seen;
    std::vector<std::vector<int>> adj(std::size_t(g.n()), std::vector<int>{});
    for (auto [u, v] : result) {
        certify(g.has_edge(u, v), "fair: result edge outside host");
        certify(seen.insert(norm_edge(u, v)).second, "fair: duplicate result edge");
        adj[std::size_t(u)].push_back(v);
        adj[std::size_t(v)].push_back(u);
    }
    if (s.structure == "matching") {
        for (int v = 0; v < g.n(); ++v)
            certify(adj[std::size_t(v)].size() == 1, "fair: matching degree");
    } else if (s.structure == "hamilton") {
        certify(recheck_hamilton_cycle(g.n(), result), "fair: result not a hamilton cycle");
    } else {
        // spanning union of pieces: every component has t vertices and the
        // piece's edge count (2 edges on 3 vertices = path, 3 = triangle)
        std::vector<int> comp(std::size_t(g.n()), -1);
        int nc = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (comp[std::size_t(v)] != -1) continue;
            std::queue<int> q;
            q.push(v);
            comp[std::size_t(v)] = nc;
            int verts = 0;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                ++verts;
                for (int w : adj[std::size_t(u)])
                    if (comp[std::size_t(w)] == -1) {
                        comp[std::size_t(w)] = nc;
                        q.push(w);
                    }
            }
            certify(verts == s.t, "fair: factor component size");
            ++nc;
        }
        std::vector<int> ce(std::size_t(nc), 0);
        for (auto [u, v] : result) ++ce[std::size_t(comp[std::size_t(u)])];
        for (int c : ce) certify(c == s.piece_edges, "fair: factor component edges");
    }
}

} // namespace

int main(int argc, char** argv) {
    auto t0 = std::chrono::steady_clock::now();

    CLI::App app{"seeded graph experiments with re-checked JSON certificates"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "also write the JSON report to this file");

    // pack
    auto* cmd_pack = app.add_subcommand("pack", "overlay two graphs without short cycles");
    std::string pack_g1, pack_g2;
    std::uint64_t pack_seed = 0;
    bool pack_hu = false;
    int pack_n = 0, pack_d = 0;
    cmd_pack->add_option("--g1", pack_g1, "first graph file")->check(CLI::ExistingFile);
    cmd_pack->add_option("--g2", pack_g2, "second graph file")->check(CLI::ExistingFile);
    cmd_pack->add_option("--seed", pack_seed, "PRNG seed");
    cmd_pack->add_flag("--hamilton-union", pack_hu, "build d edge-disjoint hamilton cycles instead");
    cmd_pack->add_option("--n", pack_n, "vertex count (hamilton-union mode)");
    cmd_pack->add_option("--d", pack_d, "layer count (hamilton-union mode)");

    // fair
    auto* cmd_fair = app.add_subcommand("fair", "balance a spanning subgraph across edge classes");
    std::string fair_host = "knn", fair_partition, fair_pattern = "matching";
    int fair_n = 0;
    cmd_fair->add_option("--host", fair_host, "host graph: knn (K_{n,n}) or kn (K_n)")
        ->check(CLI::IsMember({"knn", "kn"}));
    cmd_fair->add_option("--n", fair_n, "host size parameter")->required();
    cmd_fair->add_option("--partition", fair_partition, "edge partition file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_fair->add_option("--pattern", fair_pattern, "matching | hamilton | k2 | k3 | p3")
        ->check(CLI::IsMember({"matching", "hamilton", "k2", "k3", "p3"}));

    // cds
    auto* cmd_cds = app.add_subcommand("cds", "small connected dominating set");
    std::string cds_graph, cds_alg = "derandomized";
    std::uint64_t cds_seed = 0;
    cmd_cds->add_option("--graph", cds_graph, "graph file")->required()->check(CLI::ExistingFile);
    cmd_cds->add_option("--algorithm", cds_alg,
                        "greedy | randomized | derandomized | derandomized-exact")
        ->check(CLI::IsMember({"greedy", "randomized", "derandomized", "derandomized-exact"}));
    cmd_cds->add_option("--seed", cds_seed, "PRNG seed (randomized only)");

    // coalition
    auto* cmd_coal = app.add_subcommand("coalition", "friend-list games on class partitions");
    std::string coal_instance, coal_verify;
    bool coal_construct = false, coal_break = false;
    int coal_k = 0, coal_r = 0, coal_n = 0;
    long long coal_trials = 0;
    std::uint64_t coal_seed = 0;
    cmd_coal->add_option("--instance", coal_instance, "instance file")->check(CLI::ExistingFile);
    cmd_coal->add_flag("--construct", coal_construct, "build the winning lists (k = 1 or 2)");
    cmd_coal->add_option("--k", coal_k, "list length (with --construct)");
    cmd_coal->add_option("--r", coal_r, "coalition size (with --construct)");
    cmd_coal->add_option("--n", coal_n, "child count (with --construct)");
    cmd_coal->add_flag("--break", coal_break, "find a valid partition splitting the coalition");
    cmd_coal->add_option("--verify", coal_verify, "exhaustive game check: adversarial | fixed")
        ->check(CLI::IsMember({"adversarial", "fixed"}));
    cmd_coal->add_option("--monte-carlo", coal_trials, "random 2-coloring trials (k=3, r=5)");
    cmd_coal->add_option("--seed", coal_seed, "PRNG seed (monte-carlo only)");

    // ball
    auto* cmd_ball = app.add_subcommand("ball", "deterministic near-center of binary points");
    std::string ball_instance;
    cmd_ball->add_option("--instance", ball_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);

    // kpn
    auto* cmd_kpn = app.add_subcommand("kpn", "minimum orthogonality covers of root-of-unity vectors");
    int kpn_n = 0, kpn_p = 0;
    cmd_kpn->add_option("--n", kpn_n, "vector length")->required();
    cmd_kpn->add_option("--p", kpn_p, "prime order")->required();

    // oracle
    auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive ground-truth answers (small n)");
    std::string or_what, or_graph, or_instance, or_host = "knn", or_partition,
                or_pattern = "matching";
    int or_n = 0;
    cmd_oracle->add_option("--what", or_what,
                           "girth | gamma | gammac | partitions | fair-optimum")
        ->required()
        ->check(CLI::IsMember({"girth", "gamma", "gammac", "partitions", "fair-optimum"}));
    cmd_oracle->add_option("--graph", or_graph, "graph file")->check(CLI::ExistingFile);
    cmd_oracle->add_option("--instance", or_instance, "coalition instance file")
        ->check(CLI::ExistingFile);
    cmd_oracle->add_option("--host", or_host, "fair-optimum host: knn | kn")
        ->check(CLI::IsMember({"knn", "kn"}));
    cmd_oracle->add_option("--n", or_n, "fair-optimum host size");
    cmd_oracle->add_option("--partition", or_partition, "fair-optimum partition file")
        ->check(CLI::ExistingFile);
    cmd_oracle->add_option("--pattern", or_pattern, "fair-optimum pattern: matching | hamilton")
        ->check(CLI::IsMember({"matching", "hamilton"}));

    // lets --out appear after the subcommand name
    for (CLI::App* s : {cmd_pack, cmd_fair, cmd_cds, cmd_coal, cmd_ball, cmd_kpn, cmd_oracle})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json report;
        report["schema"] = 1;

        if (cmd_pack->parsed()) {
            report["command"] = "pack";
            if (pack_hu) {
                if (cmd_pack->count("--n") == 0 || cmd_pack->count("--d") == 0)
                    throw ParseError("pack --hamilton-union needs --n and --d");
                report["inputs"] = {{"files", json::object()},
                                    {"params", {{"mode", "hamilton-union"},
                                                {"n", pack_n},
                                                {"d", pack_d}}}};
                report["seed"] = pack_seed;
                HamiltonUnionResult res = hamilton_union_high_girth(pack_n, pack_d, pack_seed);

                certify((int)res.layers.size() == pack_d, "pack: layer count");
                std::set<Edge> all;
                for (const EdgeList& layer : res.layers) {
                    certify(recheck_hamilton_cycle(pack_n, layer), "pack: layer not hamiltonian");
                    for (auto [u, v] : layer)
                        certify(all.insert(norm_edge(u, v)).second, "pack: layers overlap");
                    for (auto [u, v] : layer)
                        certify(res.host.has_edge(u, v), "pack: layer edge missing from host");
                }
                certify(all.size() == res.host.m(), "pack: host has stray edges");
                long long gg = recheck_girth(res.host.n(), res.host.edges());
                certify(gg < 0 || gg >= res.claimed_girth, "pack: girth below claim");
                certify(len_json(res.girth_achieved) == (gg < 0 ? json("inf") : json(gg)),
                        "pack: reported girth wrong");

                json layers = json::array();
                for (const EdgeList& layer : res.layers) layers.push_back(edges_json(layer));
                report["outputs"] = {{"n", pack_n},
                                     {"d", pack_d},
                                     {"layers", layers},
                                     {"girth_achieved", len_json(res.girth_achieved)}};
                report["bounds"] = {
                    {"girth", {{"claimed_at_least", res.claimed_girth},
                               {"achieved", gg < 0 ? json("inf") : json(gg)},
                               {"verified", true}}},
                    {"layers_hamiltonian", {{"claimed", true}, {"verified", true}}},
                    {"layers_edge_disjoint", {{"claimed", true}, {"verified", true}}}};
            } else {
                if (cmd_pack->count("--g1") == 0 || cmd_pack->count("--g2") == 0)
                    throw ParseError("pack needs --g1 and --g2 (or --hamilton-union)");
                report["inputs"] = {{"files", {{"g1", file_json(pack_g1)},
                                               {"g2", file_json(pack_g2)}}},
                                    {"params", {{"mode", "pair"}}}};
                report["seed"] = pack_seed;
                Graph g1 = to_graph(read_graph_file(pack_g1));
                Graph g2 = to_graph(read_graph_file(pack_g2));
                PackResult res = pack_high_girth(g1, g2, pack_seed);
                int n = g1.n();

                certify(recheck_permutation(res.placement.f1, n), "pack: f1 not a bijection");
                certify(recheck_permutation(res.placement.f2, n), "pack: f2 not a bijection");
                std::set<Edge> e1, e2;
                for (auto [u, v] : g1.edges())
                    e1.insert(norm_edge(res.placement.f1[std::size_t(u)],
                                        res.placement.f1[std::size_t(v)]));
                for (auto [u, v] : g2.edges())
                    e2.insert(norm_edge(res.placement.f2[std::size_t(u)],
                                        res.placement.f2[std::size_t(v)]));
                certify(e1.size() == g1.m() && e2.size() == g2.m(), "pack: image lost edges");
                std::set<Edge> uni = e1;
                uni.insert(e2.begin(), e2.end());
                bool disjoint = uni.size() == e1.size() + e2.size();
                certify(disjoint == res.combined.edge_disjoint, "pack: disjointness flag");
                const EdgeList& host_edges = res.combined.host.edges();
                certify(uni.size() == host_edges.size() &&
                            std::equal(uni.begin(), uni.end(), host_edges.begin()),
                        "pack: combined edge set mismatch");
                for (std::size_t i = 0; i < host_edges.size(); ++i) {
                    bool in1 = e1.count(host_edges[i]) > 0, in2 = e2.count(host_edges[i]) > 0;
                    EdgeSide want = in1 && in2 ? EdgeSide::both
                                               : (in1 ? EdgeSide::first : EdgeSide::second);
                    certify(res.combined.side[i] == want, "pack: edge provenance mismatch");
                }
                int k2b = max_k_bound(g1.max_degree(), g2.max_degree(), n);
                certify(k2b == res.k, "pack: k bound drifted");
                long long gg = recheck_girth(n, host_edges);
                certify(gg < 0 || gg >= res.target, "pack: girth below certified target");
                certify(len_json(res.girth_achieved) == (gg < 0 ? json("inf") : json(gg)),
                        "pack: reported girth wrong");

                json sides = json::array();
                for (EdgeSide s : res.combined.side)
                    sides.push_back(s == EdgeSide::first ? "first"
                                                         : (s == EdgeSide::second ? "second"
                                                                                  : "both"));
                report["outputs"] = {
                    {"n", n},
                    {"k_bound", res.k},
                    {"target_girth", res.target},
                    {"girth_achieved", len_json(res.girth_achieved)},
                    {"edge_disjoint", res.combined.edge_disjoint},
                    {"placement", {{"f1", res.placement.f1}, {"f2", res.placement.f2}}},
                    {"combined", {{"n", n}, {"edges", edges_json(host_edges)}, {"sides", sides}}},
                    {"improvement_iterations", (long long)res.trace.iterations()}};
                report["bounds"] = {
                    {"girth", {{"claimed_at_least", res.target},
                               {"achieved", gg < 0 ? json("inf") : json(gg)},
                               {"verified", true}}},
                    {"k_from_degrees", {{"claimed", res.k}, {"recomputed", k2b},
                                        {"verified", true}}},
                    {"edge_disjoint", {{"claimed", res.combined.edge_disjoint},
                                       {"verified", true}}}};
            }
        } else if (cmd_fair->parsed()) {
            report["command"] = "fair";
            report["inputs"] = {{"files", {{"partition", file_json(fair_partition)}}},
                                {"params", {{"host", fair_host},
                                            {"n", fair_n},
                                            {"pattern", fair_pattern}}}};
            report["seed"] = nullptr;

            FairSetup setup = make_fair_setup(fair_host, fair_n, fair_pattern);
            EdgePartition part = read_partition_file(fair_partition, setup.host);
            FairTrace trace;
            EdgeList result = local_search(part, setup.start, setup.nb, &trace);

            recheck_fair_structure(setup, result);
            for (std::size_t i = 1; i < trace.potentials.size(); ++i)
                certify(trace.potentials[i] < trace.potentials[i - 1],
                        "fair: potential did not drop");

            // recount everything from the partition itself
            int m = part.num_classes();
            std::vector<long long> x(std::size_t(m), 0);
            for (auto [u, v] : result) ++x[std::size_t(part.color(u, v))];
            std::vector<long long> sizes = part.class_sizes();
            mpq_class dist2 = 0, linf = 0;
            json targets = json::array();
            for (int c = 0; c < m; ++c) {
                mpq_class y =
                    mpq_ratio(setup.pattern_edges * sizes[std::size_t(c)],
                              (long long)setup.host.m());
                targets.push_back(rat_json(y));
                mpq_class d = mpq_of(x[std::size_t(c)]) - y;
                dist2 += d * d;
                if (d < 0) d = -d;
                if (d > linf) linf = d;
            }
            certify(!trace.potentials.empty() && dist2 == trace.potentials.back(),
                    "fair: potential bookkeeping mismatch");
            mpz_class bound2 = fairness_bound_squared(m, setup.nb.width);
            bool within = m == 1 ? dist2 == 0 : dist2 < bound2;
            certify(within, "fair: distance bound violated");
            certify(linf * linf <= dist2, "fair: l-infinity exceeds l2");

            report["outputs"] = {{"classes", m},
                                 {"neighborhood", setup.nb.name},
                                 {"cover_width", setup.nb.width},
                                 {"pattern_edges", setup.pattern_edges},
                                 {"moves", trace.moves},
                                 {"result_edges", edges_json(result)},
                                 {"rep_vector", x},
                                 {"targets", targets},
                                 {"l2_squared", rat_json(dist2)},
                                 {"linf", rat_json(linf)}};
            report["bounds"] = {
                {"l2_distance", {{"claimed_below", fairness_bound(m, setup.nb.width)},
                                 {"claimed_below_squared", bound2.get_str()},
                                 {"achieved_squared", rat_json(dist2)},
                                 {"verified", true}}},
                {"pattern_shape", {{"claimed", setup.structure}, {"verified", true}}},
                {"potential_strictly_decreasing", {{"claimed", true}, {"verified", true}}}};
        } else if (cmd_cds->parsed()) {
            report["command"] = "cds";
            report["inputs"] = {{"files", {{"graph", file_json(cds_graph)}}},
                                {"params", {{"algorithm", cds_alg}}}};
            report["seed"] = cds_alg == "randomized" ? json(cds_seed) : json(nullptr);

            Graph g = to_graph(read_graph_file(cds_graph));
            CdsResult res;
            bool derand = cds_alg == "derandomized" || cds_alg == "derandomized-exact";
            if (cds_alg == "greedy") {
                std::vector<int> dom = greedy_dominating_set(g);
                res.base = dom;
                res.cds = merge_components(g, dom);
            } else if (cds_alg == "randomized") {
                res = randomized_cds(g, cds_seed);
            } else {
                res = derandomized_cds(g, cds_alg == "derandomized" ? CdsArith::float80
                                                                    : CdsArith::rational);
            }

            certify(recheck_dominating(g, res.cds), "cds: not dominating");
            certify(recheck_connected_within(g, res.cds), "cds: not connected");
            std::set<int> dedup(res.cds.begin(), res.cds.end());
            certify(dedup.size() == res.cds.size(), "cds: duplicate vertices");

            bool certified = derand && g.n() >= 2;
            long long size_cap = 0;
            if (certified) {
                size_cap = (long long)std::floor(res.bound);
                certify((long long)res.cds.size() <= size_cap, "cds: size above certified cap");
                // the chain |S| <= psi_end <= psi_start <= cap, small float slack
                certify((double)res.cds.size() <= res.psi_end + 1e-6,
                        "cds: size above final potential");
                certify(res.psi_end <= res.psi_start + 1e-6, "cds: potential rose overall");
                certify(res.psi_start <= res.bound + 1e-6, "cds: starting potential above cap");
                certify(res.max_psi_increase <= 1e-9, "cds: potential uptick beyond slack");
            }

            report["outputs"] = {
                {"n", g.n()},
                {"min_degree", g.min_degree()},
                {"algorithm", cds_alg},
                {"size", (long long)res.cds.size()},
                {"cds", res.cds},
                {"base_size", (long long)res.base.size()},
                {"t_size", res.t_size},
                {"y_size", res.y_size},
                {"psi", derand ? json{{"start", res.psi_start},
                                      {"end", res.psi_end},
                                      {"max_increase", res.max_psi_increase}}
                               : json(nullptr)}};
            report["bounds"] = {
                {"dominating", {{"claimed", true}, {"verified", true}}},
                {"connected", {{"claimed", true}, {"verified", true}}},
                {"size", certified
                             ? json{{"claimed_at_most", size_cap},
                                    {"achieved", (long long)res.cds.size()},
                                    {"certified", true},
                                    {"verified", true}}
                             : json{{"claimed_at_most", nullptr},
                                    {"achieved", (long long)res.cds.size()},
                                    {"certified", false}}}};
        } else if (cmd_coal->parsed()) {
            report["command"] = "coalition";
            int actions = (coal_break ? 1 : 0) + (cmd_coal->count("--verify") > 0 ? 1 : 0) +
                          (cmd_coal->count("--monte-carlo") > 0 ? 1 : 0);
            if (actions != 1)
                throw ParseError("coalition: pick exactly one of --break, --verify, --monte-carlo");
            bool from_file = cmd_coal->count("--instance") > 0;
            if (from_file == coal_construct)
                throw ParseError("coalition: pick exactly one of --instance, --construct");

            CoalitionInstance inst;
            json files = json::object();
            json params = json::object();
            if (from_file) {
                inst = read_coalition_file(coal_instance);
                files["instance"] = file_json(coal_instance);
            } else {
                inst = coalition_construct(coal_k, coal_r, coal_n);
                params = {{"construct", true}, {"k", coal_k}, {"r", coal_r}, {"n", coal_n}};
            }
            params["n"] = inst.n;
            params["k"] = inst.k;
            params["r"] = inst.r;
            report["inputs"] = {{"files", files}, {"params", params}};

            if (coal_break) {
                report["seed"] = nullptr;
                BreakResult res = break_coalition(inst);
                certify(recheck_partition_valid(res.completed, res.parts),
                        "coalition: breaking partition invalid");
                certify(partition_splits_coalition(res.completed, res.parts),
                        "coalition: partition does not split the coalition");
                report["outputs"] = {{"action", "break"},
                                     {"completed_choices", res.completed.choices},
                                     {"parts", res.parts},
                                     {"cycle_a", res.cycle_a.vertices},
                                     {"cycle_b", res.cycle_b.vertices}};
                report["bounds"] = {
                    {"partition_valid", {{"claimed", true}, {"verified", true}}},
                    {"coalition_split", {{"claimed", true}, {"verified", true}}}};
            } else if (cmd_coal->count("--verify") > 0) {
                report["seed"] = nullptr;
                SuccessMode mode = coal_verify == "adversarial" ? SuccessMode::adversarial
                                                                : SuccessMode::fixed_completion;
                SuccessReport rep = verify_coalition_success(inst, mode);
                json witness = nullptr;
                json wcheck = json::object();
                if (!rep.success) {
                    certify(rep.witness_parts && rep.witness_instance,
                            "coalition: failure without witness");
                    certify(recheck_partition_valid(*rep.witness_instance, *rep.witness_parts),
                            "coalition: witness partition invalid");
                    certify(partition_splits_coalition(*rep.witness_instance, *rep.witness_parts),
                            "coalition: witness does not split");
                    witness = {{"parts", *rep.witness_parts},
                               {"choices", rep.witness_instance->choices}};
                    wcheck = {{"witness_valid", {{"claimed", true}, {"verified", true}}}};
                }
                report["outputs"] = {{"action", "verify"},
                                     {"mode", coal_verify},
                                     {"success", rep.success},
                                     {"partitions_checked", rep.partitions_checked},
                                     {"witness", witness}};
                report["bounds"] = wcheck;
            } else {
                report["seed"] = coal_seed;
                MonteCarloReport rep = monte_carlo_claim(inst, coal_trials, coal_seed);
                double sigma =
                    std::sqrt(rep.frequency * (1.0 - rep.frequency) / double(rep.trials));
                double threshold = rep.claimed_lower_bound - 3.0 * sigma;
                certify(rep.frequency >= threshold, "coalition: frequency below claim band");
                report["outputs"] = {{"action", "monte-carlo"},
                                     {"trials", rep.trials},
                                     {"good", rep.good},
                                     {"frequency", rep.frequency},
                                     {"claimed_lower_bound", rep.claimed_lower_bound},
                                     {"three_sigma", 3.0 * sigma}};
                report["bounds"] = {{"frequency",
                                     {{"claimed_at_least", threshold},
                                      {"achieved", rep.frequency},
                                      {"verified", true}}}};
            }
        } else if (cmd_ball->parsed()) {
            report["command"] = "ball";
            report["inputs"] = {{"files", {{"instance", file_json(ball_instance)}}},
                                {"params", json::object()}};
            report["seed"] = nullptr;

            L1BallInstance inst = read_ball_file(ball_instance);
            HammingCenterResult res = hamming_center(inst);

            int n = (int)inst.center.size();
            certify((int)res.y.size() == n, "ball: center length");
            long long covered = 0;
            for (const auto& a : inst.points) {
                long long dist = 0;
                for (int i = 0; i < n; ++i)
                    if (a[std::size_t(i)] != res.y[std::size_t(i)]) ++dist;
                if (dist <= inst.radius) ++covered;
            }
            certify(covered == res.covered, "ball: coverage recount mismatch");
            long long needed = ((long long)inst.points.size() + 1) / 2;
            certify(covered >= needed, "ball: covered less than half");
            for (std::size_t i = 1; i < res.expectation_trace.size(); ++i)
                certify(res.expectation_trace[i] >= res.expectation_trace[i - 1],
                        "ball: conditional expectation dropped");

            json trace = json::array();
            for (const mpq_class& e : res.expectation_trace) trace.push_back(rat_json(e));
            report["outputs"] = {{"n", n},
                                 {"radius", inst.radius},
                                 {"points", (long long)inst.points.size()},
                                 {"center", res.y},
                                 {"covered", covered},
                                 {"needed", needed},
                                 {"expectation_trace", trace}};
            report["bounds"] = {
                {"coverage", {{"claimed_at_least", needed},
                              {"achieved", covered},
                              {"verified", true}}},
                {"expectation_nondecreasing", {{"claimed", true}, {"verified", true}}}};
        } else if (cmd_kpn->parsed()) {
            report["command"] = "kpn";
            report["inputs"] = {{"files", json::object()},
                                {"params", {{"n", kpn_n}, {"p", kpn_p}}}};
            report["seed"] = nullptr;

            KpnResult res = kpn_bruteforce(kpn_n, kpn_p);
            for (long long idx = 0; idx < res.universe; ++idx) {
                std::vector<int> u = kpn_digits(idx, kpn_n, kpn_p);
                bool hit = false;
                for (const auto& c : res.cover)
                    if (recheck_kpn_covers(u, c, kpn_p)) {
                        hit = true;
                        break;
                    }
                certify(hit, "kpn: universe vector left uncovered");
            }
            long long lb_linear = kpn_linear_bound(kpn_n, kpn_p);
            long long lb_count = kpn_counting_bound(kpn_n, kpn_p);
            certify(res.k >= lb_count, "kpn: below counting lower bound");
            certify(res.k >= lb_linear, "kpn: below linear lower bound");

            report["outputs"] = {{"n", kpn_n},
                                 {"p", kpn_p},
                                 {"k", res.k},
                                 {"universe", res.universe},
                                 {"cover", res.cover}};
            report["bounds"] = {
                {"cover_complete", {{"claimed", true}, {"verified", true}}},
                {"lower_bounds", {{"linear", lb_linear},
                                  {"counting", lb_count},
                                  {"verified", true}}}};
        } else if (cmd_oracle->parsed()) {
            report["command"] = "oracle";
            json files = json::object();
            json outputs;
            if (or_what == "girth" || or_what == "gamma" || or_what == "gammac") {
                if (cmd_oracle->count("--graph") == 0)
                    throw ParseError("oracle: --what " + or_what + " needs --graph");
                files["graph"] = file_json(or_graph);
                report["inputs"] = {{"files", files}, {"params", {{"what", or_what}}}};
                report["seed"] = nullptr;
                Graph g = to_graph(read_graph_file(or_graph));
                if (or_what == "girth")
                    outputs = {{"girth", len_json(exact_girth(g))}};
                else if (or_what == "gamma")
                    outputs = {{"gamma", exact_gamma(g)}};
                else
                    outputs = {{"gamma_c", exact_gamma_c(g)}};
            } else if (or_what == "partitions") {
                if (cmd_oracle->count("--instance") == 0)
                    throw ParseError("oracle: --what partitions needs --instance");
                files["instance"] = file_json(or_instance);
                report["inputs"] = {{"files", files}, {"params", {{"what", or_what}}}};
                report["seed"] = nullptr;
                CoalitionInstance inst = read_coalition_file(or_instance);
                std::vector<Partition> all = all_valid_partitions(inst);
                json shown = json::array();
                for (std::size_t i = 0; i < all.size() && i < 100; ++i) shown.push_back(all[i]);
                outputs = {{"count", (long long)all.size()},
                           {"partitions", shown},
                           {"truncated", all.size() > 100}};
            } else { // fair-optimum
                if (cmd_oracle->count("--partition") == 0 || cmd_oracle->count("--n") == 0)
                    throw ParseError("oracle: --what fair-optimum needs --n and --partition");
                files["partition"] = file_json(or_partition);
                report["inputs"] = {{"files", files},
                                    {"params", {{"what", or_what},
                                                {"host", or_host},
                                                {"n", or_n},
                                                {"pattern", or_pattern}}}};
                report["seed"] = nullptr;
                Graph host = or_host == "knn" ? Graph::complete_bipartite(or_n, or_n)
                                              : Graph::complete(or_n);
                EdgePartition part = read_partition_file(or_partition, host);
                FairPattern kind = or_pattern == "matching" ? FairPattern::matching
                                                            : FairPattern::hamilton;
                FairOptimum opt = exact_fair_optimum(part, kind);
                outputs = {{"best_dist_squared", rat_json(opt.best_dist2)},
                           {"witness", edges_json(opt.witness)},
                           {"copies_checked", opt.copies_checked}};
            }
            report["outputs"] = outputs;
            report["bounds"] = json::object();
        }

        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        report["wall_time_ms"] = (long long)ms;
        std::string text = report.dump(2) + "\n";
        std::cout << text;
        if (!out_path.empty()) write_file(out_path, text);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 4;
    }
}
