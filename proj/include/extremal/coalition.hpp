#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "rng.hpp"

// The classroom game: each of n children names k others, any acceptable
// partition must give every child a named friend in its own part, and the
// first r children conspire to end up together. k <= 2 lets them win; from
// k = 3 on, a two-part split always defeats them.

namespace extremal {

struct CoalitionInstance {
    int n = 0;
    int k = 0;
    int r = 0;
    // choices[i] is child i's list; empty = not yet filled in (only allowed
    // outside the coalition)
    std::vector<std::vector<int>> choices;
};

using Partition = std::vector<std::vector<int>>;

namespace detail {

inline void check_choice_list(const CoalitionInstance& inst, int i) {
    const auto& s = inst.choices[std::size_t(i)];
    require((int)s.size() == inst.k, "coalition: wrong list size");
    for (int v : s) {
        require(v >= 0 && v < inst.n, "coalition: choice out of range");
        require(v != i, "coalition: child listing itself");
    }
    for (std::size_t a = 1; a < s.size(); ++a)
        require(s[a - 1] < s[a], "coalition: choice list not sorted/unique");
}

} // namespace detail

inline void validate_instance(const CoalitionInstance& inst, bool allow_partial) {
    require(inst.n >= inst.k + 1, "coalition: need n >= k+1");
    require(inst.k >= 1 && inst.r >= 1 && inst.r <= inst.n, "coalition: bad k or r");
    require((int)inst.choices.size() == inst.n, "coalition: choices size mismatch");
    for (int i = 0; i < inst.n; ++i) {
        if (inst.choices[std::size_t(i)].empty()) {
            require(allow_partial && i >= inst.r,
                    allow_partial ? "coalition: missing choice list inside the coalition"
                                  : "coalition: instance must be complete here");
            continue;
        }
        detail::check_choice_list(inst, i);
    }
}

// The winning lists for the conspirators, k = 1 or 2. k=1 chains them in a
// cycle; k=2 gives the first two children an out and points everyone else
// at them.
inline CoalitionInstance coalition_construct(int k, int r, int n) {
    if (k != 1 && k != 2) throw InfeasibleParameters("coalition_construct: k must be 1 or 2");
    if (r < 2) throw InfeasibleParameters("coalition_construct: r must be at least 2");
    if (n < k + 1 || n < r) throw InfeasibleParameters("coalition_construct: n too small");
    CoalitionInstance inst;
    inst.n = n;
    inst.k = k;
    inst.r = r;
    inst.choices.assign(std::size_t(n), {});
    if (k == 1) {
        for (int i = 0; i < r; ++i) inst.choices[std::size_t(i)] = {(i + 1) % r};
    } else {
        inst.choices[0] = {1, 2};
        inst.choices[1] = {0, 2};
        for (int i = 2; i < r; ++i) inst.choices[std::size_t(i)] = {0, 1};
    }
    validate_instance(inst, true);
    return inst;
}

// Fill every missing list with the k immediate predecessors, which keeps the
// subgraph induced outside the coalition acyclic (all arcs point down, and
// arcs from child j >= r can only reach j-1..j-k, dipping into 0..r-1 when
// they leave the tail).
inline CoalitionInstance acyclic_completion(const CoalitionInstance& inst) {
    validate_instance(inst, true);
    if (inst.r < inst.k)
        throw InfeasibleParameters("acyclic_completion: needs r >= k");
    CoalitionInstance out = inst;
    for (int j = inst.r; j < inst.n; ++j) {
        if (!out.choices[std::size_t(j)].empty()) continue;
        std::vector<int> s;
        for (int t = j - inst.k; t < j; ++t) s.push_back(t);
        out.choices[std::size_t(j)] = s;
    }
    validate_instance(out, false);
    return out;
}

inline Digraph choice_digraph(const CoalitionInstance& inst) {
    validate_instance(inst, false);
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < inst.n; ++i)
        for (int j : inst.choices[std::size_t(i)]) arcs.push_back({i, j});
    return Digraph(inst.n, arcs);
}

// True iff the induced sub-digraph on the non-coalition children has no
// directed cycle (checked by repeatedly peeling vertices with no remaining
// out-neighbors).
inline bool completion_is_acyclic(const CoalitionInstance& inst) {
    validate_instance(inst, false);
    std::vector<char> alive(std::size_t(inst.n), 0);
    for (int j = inst.r; j < inst.n; ++j) alive[std::size_t(j)] = 1;
    bool progress = true;
    int remaining = inst.n - inst.r;
    while (progress) {
        progress = false;
        for (int j = inst.r; j < inst.n; ++j) {
            if (!alive[std::size_t(j)]) continue;
            bool has_out = false;
            for (int t : inst.choices[std::size_t(j)])
                if (t >= inst.r && alive[std::size_t(t)]) {
                    has_out = true;
                    break;
                }
            if (!has_out) {
                alive[std::size_t(j)] = 0;
                --remaining;
                progress = true;
            }
        }
    }
    return remaining == 0;
}

namespace detail {

// All simple directed cycles with smallest vertex first, found by DFS from
// each start over larger-indexed vertices only. Bounded: throws if the count
// explodes (it cannot at the scales the callers use).
inline std::vector<Cycle> enumerate_directed_cycles(const Digraph& d, std::size_t cap = 500000) {
    std::vector<Cycle> cycles;
    int n = d.n();
    std::vector<char> on_path(std::size_t(n), 0);
    for (int s = 0; s < n; ++s) {
        std::vector<int> path = {s};
        std::vector<std::size_t> cursor = {0};
        on_path[std::size_t(s)] = 1;
        while (!path.empty()) {
            int cur = path.back();
            const auto& outs = d.out_neighbors(cur);
            if (cursor.back() >= outs.size()) {
                on_path[std::size_t(cur)] = 0;
                path.pop_back();
                cursor.pop_back();
                continue;
            }
            int y = outs[cursor.back()++];
            if (y == s && path.size() >= 2) {
                cycles.push_back(Cycle{path});
                if (cycles.size() > cap)
                    throw TooLarge("enumerate_directed_cycles: too many cycles");
            } else if (y > s && !on_path[std::size_t(y)]) {
                path.push_back(y);
                cursor.push_back(0);
                on_path[std::size_t(y)] = 1;
            }
        }
        on_path[std::size_t(s)] = 0;
    }
    std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
        if (a.vertices.size() != b.vertices.size())
            return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    return cycles;
}

} // namespace detail

// Two vertex-disjoint directed cycles. Existence is a theorem once every
// outdegree is >= 3, so a plain search suffices: shortest cycles first, first
// disjoint pair wins.
inline std::pair<Cycle, Cycle> find_two_disjoint_cycles(const Digraph& d) {
    auto cycles = detail::enumerate_directed_cycles(d);
    std::size_t words = std::size_t(d.n() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> masks(cycles.size(),
                                                  std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (int v : cycles[i].vertices)
            masks[i][std::size_t(v) / 64] |= 1ULL << (std::size_t(v) % 64);
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            bool disjoint = true;
            for (std::size_t w = 0; w < words; ++w)
                if (masks[i][w] & masks[j][w]) {
                    disjoint = false;
                    break;
                }
            if (disjoint) {
                invariant(cycles[i].valid_in(d) && cycles[j].valid_in(d),
                          "find_two_disjoint_cycles: enumerated a non-cycle");
                return {cycles[i], cycles[j]};
            }
        }
    if (d.min_out_degree() >= 3)
        throw InternalInvariantViolation(
            "find_two_disjoint_cycles: none found despite outdegree >= 3");
    throw NotFound("find_two_disjoint_cycles: no disjoint pair (outdegree below 3?)");
}

struct BreakResult {
    CoalitionInstance completed; // the non-coalition lists used as certificate
    Partition parts;             // exactly 2 parts, coalition split across them
    Cycle cycle_a, cycle_b;      // the disjoint-cycle seeds
};

inline bool verify_partition(const CoalitionInstance& inst, const Partition& parts);

// The teacher's counter-move for k >= 3, r >= k: complete the lists so the
// outside children form an acyclic digraph, seed two parts with disjoint
// cycles (each necessarily meets the coalition), then grow both parts until
// everything is absorbed. Every child keeps an out-neighbor in its own part.
inline BreakResult break_coalition(const CoalitionInstance& inst) {
    validate_instance(inst, true);
    require(inst.k >= 3, "break_coalition: needs k >= 3");
    if (inst.r < inst.k)
        throw InfeasibleParameters("break_coalition: needs r >= k (small coalitions "
                                   "are handled probabilistically, not constructively)");

    BreakResult res;
    bool prefilled = true;
    for (int j = inst.r; j < inst.n; ++j)
        if (inst.choices[std::size_t(j)].empty()) prefilled = false;
    if (prefilled && completion_is_acyclic(inst)) {
        res.completed = inst;
    } else {
        // discard any pre-filled outside lists that leave a cycle out there
        CoalitionInstance trimmed = inst;
        for (int j = inst.r; j < inst.n; ++j) trimmed.choices[std::size_t(j)].clear();
        res.completed = acyclic_completion(trimmed);
    }

    Digraph d = choice_digraph(res.completed);
    invariant(d.min_out_degree() >= 3, "break_coalition: outdegree dropped below 3");
    auto [ca, cb] = find_two_disjoint_cycles(d);
    res.cycle_a = ca;
    res.cycle_b = cb;

    auto touches_r = [&](const Cycle& c) {
        for (int v : c.vertices)
            if (v < inst.r) return true;
        return false;
    };
    invariant(touches_r(ca) && touches_r(cb),
              "break_coalition: a seed cycle avoids the coalition");

    std::vector<int> part(std::size_t(inst.n), -1);
    for (int v : ca.vertices) part[std::size_t(v)] = 0;
    for (int v : cb.vertices) part[std::size_t(v)] = 1;
    int unassigned = 0;
    for (int v = 0; v < inst.n; ++v)
        if (part[std::size_t(v)] < 0) ++unassigned;

    while (unassigned > 0) {
        bool moved = false;
        for (int v = 0; v < inst.n; ++v) {
            if (part[std::size_t(v)] >= 0) continue;
            int dest = -1;
            for (int y : res.completed.choices[std::size_t(v)]) {
                int p = part[std::size_t(y)];
                if (p == 0) {
                    dest = 0; // first part wins ties
                    break;
                }
                if (p == 1) dest = 1;
            }
            if (dest >= 0) {
                part[std::size_t(v)] = dest;
                --unassigned;
                moved = true;
            }
        }
        if (!moved) {
            // a stalled remainder has all its out-neighbors inside itself,
            // so it is self-sufficient and can ride along with the first part
            for (int v = 0; v < inst.n; ++v)
                if (part[std::size_t(v)] < 0) {
                    part[std::size_t(v)] = 0;
                    --unassigned;
                }
        }
    }

    res.parts.assign(2, {});
    for (int v = 0; v < inst.n; ++v) res.parts[std::size_t(part[std::size_t(v)])].push_back(v);
    invariant(!res.parts[0].empty() && !res.parts[1].empty(),
              "break_coalition: produced an empty part");
    invariant(verify_partition(res.completed, res.parts),
              "break_coalition: partition violates the friend condition");
    bool split_lo = false, split_hi = false;
    for (int i = 0; i < inst.r; ++i)
        (part[std::size_t(i)] == 0 ? split_lo : split_hi) = true;
    invariant(split_lo && split_hi, "break_coalition: coalition ended up together");
    return res;
}

// Condition check: parts disjoint, cover everyone, no empty part, and each
// child has a listed friend in its own part.
inline bool verify_partition(const CoalitionInstance& inst, const Partition& parts) {
    validate_instance(inst, false);
    std::vector<int> owner(std::size_t(inst.n), -1);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].empty()) throw MalformedPartition("verify_partition: empty part");
        for (int v : parts[p]) {
            if (v < 0 || v >= inst.n)
                throw MalformedPartition("verify_partition: vertex out of range");
            if (owner[std::size_t(v)] >= 0)
                throw MalformedPartition("verify_partition: vertex in two parts");
            owner[std::size_t(v)] = (int)p;
        }
    }
    for (int v = 0; v < inst.n; ++v)
        if (owner[std::size_t(v)] < 0)
            throw MalformedPartition("verify_partition: vertex in no part");
    for (int v = 0; v < inst.n; ++v) {
        bool ok = false;
        for (int y : inst.choices[std::size_t(v)])
            if (owner[std::size_t(y)] == owner[std::size_t(v)]) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

namespace detail {

template <class Visitor>
bool rgs_recurse(int n, int i, int maxb, std::vector<int>& rgs, Visitor& visit) {
    if (i == n) return visit(rgs, maxb + 1);
    for (int b = 0; b <= maxb + 1; ++b) {
        rgs[std::size_t(i)] = b;
        if (!rgs_recurse(n, i + 1, std::max(maxb, b), rgs, visit)) return false;
    }
    return true;
}

// Visit all set partitions of {0..n-1} encoded as restricted growth strings
// (element 0 pinned to block 0); the visitor gets block-of-each-element plus
// the block count and may return false to stop early.
template <class Visitor>
void for_each_set_partition(int n, Visitor&& visit) {
    require(n >= 1, "for_each_set_partition: empty ground set");
    std::vector<int> rgs(std::size_t(n), 0);
    rgs_recurse(n, 1, 0, rgs, visit);
}

} // namespace detail

enum class SuccessMode {
    adversarial,     // outside children pick their lists per partition
    fixed_completion // outside children keep the instance's (or default) lists
};

struct SuccessReport {
    bool success = false;
    SuccessMode mode = SuccessMode::adversarial;
    long long partitions_checked = 0;
    // present iff the coalition fails: a valid partition splitting it, plus
    // the outside lists that make it valid
    std::optional<Partition> witness_parts;
    std::optional<CoalitionInstance> witness_instance;
};

// Exhaustive decision of the coalition game for the children 0..r-1.
//
// In adversarial mode this is exact: the coalition fails iff some partition
// (a) splits it, (b) gives every conspirator a listed friend in-part, and
// (c) leaves no outsider alone in a part. Given (c) the outsiders' lists can
// always be completed to validate exactly that partition, and any valid
// splitting partition under any completion clearly satisfies (a)-(c).
//
// fixed_completion instead freezes the outside lists (instance's own if
// present, else the acyclic default) and asks whether any valid partition
// splits the coalition. Weaker adversary, kept for comparison.
inline SuccessReport verify_coalition_success(const CoalitionInstance& inst,
                                              SuccessMode mode = SuccessMode::adversarial) {
    validate_instance(inst, true);
    if (inst.n > 10) throw TooLarge("verify_coalition_success: n > 10");
    require(inst.r >= 2, "verify_coalition_success: coalition smaller than 2");

    SuccessReport rep;
    rep.mode = mode;

    CoalitionInstance fixed;
    if (mode == SuccessMode::fixed_completion) {
        bool complete = true;
        for (int j = inst.r; j < inst.n; ++j)
            if (inst.choices[std::size_t(j)].empty()) complete = false;
        fixed = complete ? inst : acyclic_completion(inst);
    }

    long long checked = 0;
    bool split_found = false;
    Partition witness;
    std::vector<int> witness_rgs;

    detail::for_each_set_partition(inst.n, [&](const std::vector<int>& rgs, int blocks) {
        ++checked;
        int b0 = rgs[0];
        bool splits = false;
        for (int i = 1; i < inst.r; ++i)
            if (rgs[std::size_t(i)] != b0) {
                splits = true;
                break;
            }
        if (!splits) return true;

        if (mode == SuccessMode::adversarial) {
            for (int i = 0; i < inst.r; ++i) {
                bool happy = false;
                for (int y : inst.choices[std::size_t(i)])
                    if (rgs[std::size_t(y)] == rgs[std::size_t(i)]) {
                        happy = true;
                        break;
                    }
                if (!happy) return true;
            }
            std::vector<int> bsize(std::size_t(blocks), 0);
            for (int v = 0; v < inst.n; ++v) ++bsize[std::size_t(rgs[std::size_t(v)])];
            for (int j = inst.r; j < inst.n; ++j)
                if (bsize[std::size_t(rgs[std::size_t(j)])] < 2) return true;
        } else {
            for (int v = 0; v < inst.n; ++v) {
                const auto& s = v < inst.r ? inst.choices[std::size_t(v)]
                                           : fixed.choices[std::size_t(v)];
                bool happy = false;
                for (int y : s)
                    if (rgs[std::size_t(y)] == rgs[std::size_t(v)]) {
                        happy = true;
                        break;
                    }
                if (!happy) return true;
            }
        }

        split_found = true;
        witness.assign(std::size_t(blocks), {});
        for (int v = 0; v < inst.n; ++v) witness[std::size_t(rgs[std::size_t(v)])].push_back(v);
        witness_rgs = rgs;
        return false;
    });

    rep.partitions_checked = checked;
    rep.success = !split_found;
    if (split_found) {
        rep.witness_parts = witness;
        if (mode == SuccessMode::adversarial) {
            // materialize outside lists that validate the witness partition:
            // a part-mate first, then the smallest other children as filler
            CoalitionInstance wi = inst;
            for (int j = inst.r; j < inst.n; ++j) {
                std::vector<int> s;
                for (int v : witness[std::size_t(witness_rgs[std::size_t(j)])])
                    if (v != j) {
                        s.push_back(v);
                        break;
                    }
                invariant(!s.empty(), "verify_coalition_success: lonely outsider slipped through");
                for (int v = 0; v < inst.n && (int)s.size() < inst.k; ++v)
                    if (v != j && v != s[0]) s.push_back(v);
                std::sort(s.begin(), s.end());
                wi.choices[std::size_t(j)] = s;
            }
            validate_instance(wi, false);
            invariant(verify_partition(wi, witness),
                      "verify_coalition_success: witness failed re-validation");
            rep.witness_instance = wi;
        } else {
            CoalitionInstance wi = inst;
            for (int j = inst.r; j < inst.n; ++j)
                wi.choices[std::size_t(j)] = fixed.choices[std::size_t(j)];
            invariant(verify_partition(wi, witness),
                      "verify_coalition_success: witness failed re-validation");
            rep.witness_instance = wi;
        }
    }
    return rep;
}

struct MonteCarloReport {
    long long trials = 0;
    long long good = 0;
    double frequency = 0.0;
    double claimed_lower_bound = 5.0 / 16.0; // 1 - 1/16 - 5/8
};

// Random 2-coloring experiment behind the k=3, r=5 impossibility: the good
// event is "the five conspirators are bichromatic and each has a same-color
// friend". One-coin-per-child, sub-seeded per trial so the count is
// independent of iteration order.
inline MonteCarloReport monte_carlo_claim(const CoalitionInstance& inst, long long trials,
                                          std::uint64_t seed) {
    validate_instance(inst, true);
    require(inst.k == 3 && inst.r == 5, "monte_carlo_claim: stated for k=3, r=5");
    require(inst.n >= 5, "monte_carlo_claim: need n >= 5");
    require(trials >= 1, "monte_carlo_claim: need at least one trial");

    MonteCarloReport rep;
    rep.trials = trials;
    std::vector<char> red(std::size_t(inst.n), 0);
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, std::uint64_t(t));
        for (int v = 0; v < inst.n; ++v) red[std::size_t(v)] = rng.coin(0.5) ? 1 : 0;
        bool seen_red = false, seen_blue = false;
        for (int i = 0; i < inst.r; ++i) (red[std::size_t(i)] ? seen_red : seen_blue) = true;
        if (!seen_red || !seen_blue) continue;
        bool all_happy = true;
        for (int i = 0; i < inst.r && all_happy; ++i) {
            bool happy = false;
            for (int y : inst.choices[std::size_t(i)])
                if (red[std::size_t(y)] == red[std::size_t(i)]) {
                    happy = true;
                    break;
                }
            all_happy = happy;
        }
        if (all_happy) ++rep.good;
    }
    rep.frequency = double(rep.good) / double(rep.trials);
    return rep;
}

} // namespace extremal
