#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coalition.hpp"
#include "errors.hpp"
#include "fair.hpp"
#include "graph.hpp"
#include "prob.hpp"

namespace extremal {

// ---- digests ---------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[std::size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

inline std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string file_digest(const std::string& path) {
    return "fnv1a64:" + hex64(fnv1a64(slurp_file(path)));
}

// ---- low-level token reading ------------------------------------------------

namespace detail {

inline long long next_ll(std::istringstream& in, const char* what) {
    long long v;
    if (!(in >> v)) throw ParseError(std::string("expected integer: ") + what);
    return v;
}

inline int next_int(std::istringstream& in, const char* what) {
    long long v = next_ll(in, what);
    if (v < -2147483648LL || v > 2147483647LL)
        throw ParseError(std::string("integer out of range: ") + what);
    return (int)v;
}

} // namespace detail

// "3/4", "-2", "0.625" all become exact rationals
inline mpq_class parse_rational(const std::string& token) {
    std::string t = token;
    if (t.empty()) throw ParseError("empty rational token");
    bool neg = false;
    std::size_t pos = 0;
    if (t[0] == '+' || t[0] == '-') {
        neg = t[0] == '-';
        pos = 1;
    }
    std::string body = t.substr(pos);
    if (body.empty()) throw ParseError("bad rational: " + token);
    for (char c : body)
        if (!std::isdigit((unsigned char)c) && c != '/' && c != '.')
            throw ParseError("bad rational: " + token);
    try {
        mpq_class q;
        auto slash = body.find('/');
        auto dot = body.find('.');
        if (slash != std::string::npos && dot != std::string::npos)
            throw ParseError("bad rational: " + token);
        if (slash != std::string::npos) {
            mpz_class num(body.substr(0, slash));
            mpz_class den(body.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator: " + token);
            q = mpq_class(num) / mpq_class(den);
        } else if (dot != std::string::npos) {
            std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
            if (ip.empty() && fp.empty()) throw ParseError("bad rational: " + token);
            mpz_class num(ip.empty() ? "0" : ip);
            mpz_class scale = 1;
            for (char c : fp) {
                (void)c;
                scale *= 10;
            }
            num *= scale;
            if (!fp.empty()) num += mpz_class(fp);
            q = mpq_class(num) / mpq_class(scale);
        } else {
            q = mpq_class(mpz_class(body));
        }
        q.canonicalize();
        if (neg) q = -q;
        return q;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad rational: " + token);
    }
}

// ---- graph files -------------------------------------------------------------
//
//   [directed]        optional header flag
//   n m
//   u v               (m lines, 0-indexed)

struct ParsedGraphFile {
    bool directed = false;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

inline ParsedGraphFile parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    ParsedGraphFile out;
    std::string first;
    if (!(in >> first)) throw ParseError("graph file: empty");
    if (first == "directed") {
        out.directed = true;
        if (!(in >> first)) throw ParseError("graph file: missing n");
    }
    try {
        std::size_t used = 0;
        out.n = std::stoi(first, &used);
        if (used != first.size()) throw ParseError("graph file: bad n");
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("graph file: bad n");
    }
    long long m;
    if (!(in >> m) || m < 0) throw ParseError("graph file: bad m");
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw ParseError("graph file: truncated edge list");
        out.edges.push_back({u, v});
    }
    std::string extra;
    if (in >> extra) throw ParseError("graph file: trailing tokens");
    return out;
}

inline ParsedGraphFile read_graph_file(const std::string& path) {
    return parse_graph_text(slurp_file(path));
}

inline Graph to_graph(const ParsedGraphFile& f) {
    require(!f.directed, "graph file: expected an undirected graph");
    EdgeList edges;
    for (auto [u, v] : f.edges) edges.push_back(norm_edge(u, v));
    return Graph(f.n, edges);
}

inline Digraph to_digraph(const ParsedGraphFile& f) {
    require(f.directed, "graph file: expected a directed graph");
    return Digraph(f.n, f.edges);
}

inline std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    out << g.n() << " " << g.m() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

inline std::string digraph_to_text(const Digraph& d) {
    std::ostringstream out;
    out << "directed\n" << d.n() << " " << d.arc_count() << "\n";
    for (int u = 0; u < d.n(); ++u)
        for (int v : d.out_neighbors(u)) out << u << " " << v << "\n";
    return out.str();
}

// ---- edge partition files ------------------------------------------------------
//
//   m
//   u v c             (one line per host edge, 0 <= c < m)

inline EdgePartition parse_partition_text(const std::string& text, Graph host) {
    std::istringstream in(text);
    int m;
    if (!(in >> m) || m < 1) throw ParseError("partition file: bad class count");
    std::map<Edge, int> colors;
    int u, v, c;
    while (in >> u) {
        if (!(in >> v >> c)) throw ParseError("partition file: truncated line");
        if (u < 0 || u >= host.n() || v < 0 || v >= host.n())
            throw ParseError("partition file: vertex out of range");
        if (c < 0 || c >= m) throw ParseError("partition file: color out of range");
        Edge e = norm_edge(u, v);
        if (colors.count(e)) throw ParseError("partition file: duplicate edge");
        colors[e] = c;
    }
    return EdgePartition::from_color_map(std::move(host), m, colors);
}

inline EdgePartition read_partition_file(const std::string& path, Graph host) {
    return parse_partition_text(slurp_file(path), std::move(host));
}

inline std::string partition_to_text(const EdgePartition& p) {
    std::ostringstream out;
    out << p.num_classes() << "\n";
    for (const Edge& e : p.host().edges())
        out << e.first << " " << e.second << " " << p.color(e.first, e.second) << "\n";
    return out.str();
}

// ---- coalition instance files ---------------------------------------------------
//
//   n k r
//   i: s1 s2 ... sk   (children with no line yet to be completed)

inline CoalitionInstance parse_coalition_text(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    CoalitionInstance inst;
    bool header = false;
    while (std::getline(lines, line)) {
        for (char& c : line)
            if (c == ':') c = ' ';
        std::istringstream in(line);
        if (!header) {
            std::string probe;
            if (!(in >> probe)) continue; // blank leading line
            std::istringstream hdr(line);
            inst.n = detail::next_int(hdr, "n");
            inst.k = detail::next_int(hdr, "k");
            inst.r = detail::next_int(hdr, "r");
            if (inst.n < 1 || inst.k < 1 || inst.r < 1)
                throw ParseError("coalition file: bad header");
            inst.choices.assign(std::size_t(inst.n), {});
            header = true;
            continue;
        }
        int i;
        if (!(in >> i)) continue; // blank line
        if (i < 0 || i >= inst.n) throw ParseError("coalition file: child out of range");
        if (!inst.choices[std::size_t(i)].empty())
            throw ParseError("coalition file: duplicate child line");
        std::vector<int> s;
        int x;
        while (in >> x) s.push_back(x);
        if ((int)s.size() != inst.k) throw ParseError("coalition file: wrong list length");
        std::sort(s.begin(), s.end());
        inst.choices[std::size_t(i)] = s;
    }
    if (!header) throw ParseError("coalition file: empty");
    validate_instance(inst, true);
    return inst;
}

inline CoalitionInstance read_coalition_file(const std::string& path) {
    return parse_coalition_text(slurp_file(path));
}

inline std::string coalition_to_text(const CoalitionInstance& inst) {
    std::ostringstream out;
    out << inst.n << " " << inst.k << " " << inst.r << "\n";
    for (int i = 0; i < inst.n; ++i) {
        if (inst.choices[std::size_t(i)].empty()) continue;
        out << i << ":";
        for (int v : inst.choices[std::size_t(i)]) out << " " << v;
        out << "\n";
    }
    return out.str();
}

// ---- l1-ball instance files --------------------------------------------------------
//
//   n d a             (dimension, radius, point count)
//   x1 ... xn         (center, rationals or decimals)
//   b1 ... bn         (a lines of 0/1)

inline L1BallInstance parse_ball_text(const std::string& text) {
    std::istringstream in(text);
    long long n, d, a;
    if (!(in >> n >> d >> a)) throw ParseError("ball file: bad header");
    if (n < 1 || d < 0 || a < 1) throw ParseError("ball file: bad header values");
    L1BallInstance inst;
    inst.radius = d;
    for (long long i = 0; i < n; ++i) {
        std::string tok;
        if (!(in >> tok)) throw ParseError("ball file: truncated center");
        inst.center.push_back(parse_rational(tok));
    }
    for (long long j = 0; j < a; ++j) {
        std::vector<int> pt;
        for (long long i = 0; i < n; ++i) {
            int b;
            if (!(in >> b)) throw ParseError("ball file: truncated point list");
            if (b != 0 && b != 1) throw ParseError("ball file: point entry not 0/1");
            pt.push_back(b);
        }
        inst.points.push_back(pt);
    }
    std::string extra;
    if (in >> extra) throw ParseError("ball file: trailing tokens");
    validate_l1_instance(inst);
    return inst;
}

inline L1BallInstance read_ball_file(const std::string& path) {
    return parse_ball_text(slurp_file(path));
}

inline std::string ball_to_text(const L1BallInstance& inst) {
    std::ostringstream out;
    out << inst.center.size() << " " << inst.radius << " " << inst.points.size() << "\n";
    for (std::size_t i = 0; i < inst.center.size(); ++i)
        out << (i ? " " : "") << inst.center[i].get_str();
    out << "\n";
    for (const auto& pt : inst.points) {
        for (std::size_t i = 0; i < pt.size(); ++i) out << (i ? " " : "") << pt[i];
        out << "\n";
    }
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
    require(bool(out), "write failed: " + path);
}

} // namespace extremal
