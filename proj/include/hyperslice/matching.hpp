// matching.hpp - integral and fractional matchings in k-graphs
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "lp.hpp"
#include "tight.hpp"

namespace hyperslice {

struct Matching {
    std::vector<Edge> edges;
    int size() const { return static_cast<int>(edges.size()); }
};

// ---------------------------------------------------------------------------
// Exact matching number by branch and bound.
//
// Depth-first over edges in lexicographic order; at each step either skip the
// next usable edge or take it.  The bound current + floor(free/k) prunes.
// The witness returned is the lexicographically least maximum matching.

namespace detail {

struct MatchCtx {
    const KGraph& g;
    std::vector<bool> used;
    std::vector<Edge> current;
    std::vector<Edge> best;
    int free;

    void dfs(std::size_t from) {
        if (current.size() > best.size()) best = current;
        if (current.size() + static_cast<std::size_t>(free / g.k) <= best.size()) return;
        for (std::size_t i = from; i < g.edges.size(); ++i) {
            const Edge& e = g.edges[i];
            bool ok = true;
            for (int v : e)
                if (used[v]) { ok = false; break; }
            if (!ok) continue;
            for (int v : e) used[v] = true;
            free -= g.k;
            current.push_back(e);
            dfs(i + 1);
            current.pop_back();
            free += g.k;
            for (int v : e) used[v] = false;
        }
    }
};

}  // namespace detail

inline Matching maximum_matching(const KGraph& g) {
    detail::MatchCtx ctx{g, std::vector<bool>(g.n, false), {}, {}, g.n};
    ctx.dfs(0);
    return Matching{ctx.best};
}

inline int matching_number(const KGraph& g) { return maximum_matching(g).size(); }

// ---------------------------------------------------------------------------
// Maximum fractional matching
//
// LP: maximize sum of edge weights subject to load at most 1 per vertex.
// The dual optimum is a minimum fractional vertex cover; it is verified on
// every solve and returned alongside the weights.

struct FractionalMatching {
    std::vector<std::pair<Edge, rational>> weights;  // nonzero weights, lex order
    std::vector<rational> cover;                     // dual: one value per vertex
    rational total;

    rational weight_of(const Edge& e) const {
        for (const auto& [f, w] : weights)
            if (f == e) return w;
        return rational(0);
    }
};

// With a component id and labels, the support is restricted to that tight
// component's edges; vertex loads still range over the whole vertex set.
inline FractionalMatching max_fractional_matching(const KGraph& g,
                                                  const TightComponents* tc = nullptr,
                                                  int component = -1) {
    std::vector<Edge> pool;
    if (tc) {
        if (component < 0 || component >= tc->count)
            throw invalid_query("component id out of range");
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            if (tc->label[i] == component) pool.push_back(g.edges[i]);
    } else {
        pool = g.edges;
    }
    const std::size_t m = pool.size();
    std::vector<std::vector<rational>> a(g.n, std::vector<rational>(m, 0));
    std::vector<rational> b(g.n, 1), c(m, 1);
    for (std::size_t j = 0; j < m; ++j)
        for (int v : pool[j]) a[v][j] = 1;
    LpSolution s = simplex_max(a, b, c);
    if (!check_duality(a, b, c, s))
        throw error("fractional matching certificate failed verification");
    FractionalMatching out;
    out.total = s.objective;
    out.cover = s.y;
    for (std::size_t j = 0; j < m; ++j)
        if (s.x[j] != 0) out.weights.emplace_back(pool[j], s.x[j]);
    return out;
}

// True when the fractional matching is perfect, i.e. has weight n/k.
inline bool is_perfect_fractional(const KGraph& g, const FractionalMatching& fm) {
    return fm.total == rational(g.n, g.k);
}

// ---------------------------------------------------------------------------
// Degree-cascade hypothesis on a k-partite complex
//
// Setting: a k-complex whose ground set is split into k parts of size t, the
// empty set present, every set with at most one vertex per part.  Hypothesis:
// for every level 0 <= i <= k-1 and every part j, each i-edge avoiding part j
// extends to at least t - i*t/k (i+1)-edges meeting part j.  Conclusion: the
// top level has a perfect fractional matching, of weight t.

struct FarkasViolation {
    int level;       // i
    int part;        // j
    Edge witness;    // the i-edge with too few extensions
    std::uint64_t extensions;
    rational threshold;
};

struct FarkasCheck {
    bool holds = false;
    std::optional<FarkasViolation> violation;
    std::optional<FractionalMatching> fractional;  // filled when asked and holds
};

namespace detail {

inline void require_partite_complex(const Complex& c, const GroundPartition& p) {
    if (p.n() != c.n) throw invalid_query("partition does not cover the vertex set");
    if (p.t != c.k) throw invalid_query("need exactly k parts");
    if (!p.equal_sizes()) throw invalid_query("parts must have equal sizes");
    if (c.levels[0].empty()) throw invalid_query("complex must contain the empty set");
    for (const auto& lv : c.levels)
        for (const Edge& e : lv)
            if (!is_partite_set(e, p))
                throw invalid_query("complex has a set with two vertices in one part");
}

}  // namespace detail

inline FarkasCheck check_farkas_hypothesis(const Complex& c, const GroundPartition& p,
                                           bool verify_conclusion = true) {
    detail::require_partite_complex(c, p);
    const int k = c.k;
    const int t = c.n / k;
    FarkasCheck out;
    for (int i = 0; i <= k - 1; ++i) {
        const rational threshold = rational(t) - rational(i * t, k);
        for (int j = 0; j < k; ++j) {
            for (const Edge& e : c.levels[i]) {
                Edge idx = index_of(e, p);
                if (contains_vertex(idx, j)) continue;
                std::uint64_t ext = 0;
                for (const Edge& f : c.levels[i + 1])
                    if (is_subset(e, f) && contains_vertex(index_of(f, p), j)) ++ext;
                if (rational(ext) < threshold) {
                    out.holds = false;
                    out.violation = FarkasViolation{i, j, e, ext, threshold};
                    return out;
                }
            }
        }
    }
    out.holds = true;
    if (verify_conclusion) {
        out.fractional = max_fractional_matching(top_level(c));
        if (out.fractional->total != rational(t))
            throw error("degree cascade held but the fractional matching is not perfect");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Excellent edges and tightly connected matchings
//
// An edge of a complex is excellent when all of its subsets are present.
// Under the cascade-with-slack hypothesis below, a greedy walk through
// excellent edges produces a tight path whose every k-th window is a
// matching, all inside one tight component.

inline bool is_excellent(const Edge& e, const Complex& c) {
    bool ok = true;
    for_each_subset_mask(e, [&](const Edge& sub) { ok = ok && c.has(sub); });
    return ok;
}

struct ConnectedMatching {
    Matching matching;
    std::optional<TightWalk> path;  // the greedy path; absent when the target is 0
    int component = -1;             // tight component holding the matching
    int component_count = 0;
    std::optional<FractionalMatching> fractional;  // perfect-fractional mode
};

enum class PartiteMatchingMode { Matching, PerfectFractional };

// Hypothesis, for parameters alpha and beta on a k-partite complex with k
// parts of size t:
//   (i)   the empty set and every singleton are present;
//   (ii)  for 1 <= i <= k-2 and every part j, each i-edge avoiding part j
//         extends to at least (1-beta)t (i+1)-edges meeting part j;
//   (iii) each (k-1)-edge lies in at least (alpha + (2^k+1)beta)t k-edges.
// Violations throw hypothesis_violated naming the clause.
//
// Matching mode returns a tightly connected matching of floor(alpha*t) edges.
// PerfectFractional mode additionally requires alpha >= 1/2 and returns a
// perfect fractional matching on the top level together with the certificate
// that the top level is one tight component.
inline ConnectedMatching partite_connected_matching(const Complex& c, const GroundPartition& p,
                                                    const rational& alpha, const rational& beta,
                                                    PartiteMatchingMode mode) {
    detail::require_partite_complex(c, p);
    const int k = c.k;
    const int t = c.n / k;
    if (alpha < 0 || alpha > 1) throw invalid_query("alpha must lie in [0,1]");
    if (beta <= 0) throw invalid_query("beta must be positive");

    // (i)
    if (c.levels[0].empty())
        throw hypothesis_violated("i", "the empty set is missing");
    for (int v = 0; v < c.n; ++v)
        if (!c.has(Edge{v}))
            throw hypothesis_violated("i", "singleton {" + std::to_string(v) + "} is missing");

    // (ii)
    const rational ext_threshold = (1 - beta) * rational(t);
    for (int i = 1; i <= k - 2; ++i) {
        for (int j = 0; j < k; ++j) {
            for (const Edge& e : c.levels[i]) {
                Edge idx = index_of(e, p);
                if (contains_vertex(idx, j)) continue;
                std::uint64_t ext = 0;
                for (const Edge& f : c.levels[i + 1])
                    if (is_subset(e, f) && contains_vertex(index_of(f, p), j)) ++ext;
                if (rational(ext) < ext_threshold)
                    throw hypothesis_violated(
                        "ii", "a level-" + std::to_string(i) + " edge has only " +
                                  std::to_string(ext) + " extensions into part " + std::to_string(j));
            }
        }
    }

    // (iii)
    const rational top_threshold = (alpha + rational((std::uint64_t(1) << k) + 1) * beta) * rational(t);
    for (const Edge& e : c.levels[k - 1]) {
        std::uint64_t deg = degree_up(e, c);
        if (rational(deg) < top_threshold)
            throw hypothesis_violated("iii", "a level-" + std::to_string(k - 1) +
                                                 " edge lies in only " + std::to_string(deg) +
                                                 " top edges");
    }

    ConnectedMatching out;
    const KGraph top = top_level(c);
    const TightComponents tc = tight_components(top);
    out.component_count = tc.count;

    if (mode == PartiteMatchingMode::PerfectFractional) {
        if (alpha < rational(1, 2))
            throw invalid_query("perfect fractional conclusion needs alpha at least 1/2");
        if (tc.count != 1)
            throw error("top level split into " + std::to_string(tc.count) +
                        " tight components despite the hypothesis");
        out.component = 0;
        out.fractional = max_fractional_matching(top);
        if (!is_perfect_fractional(top, *out.fractional))
            throw error("fractional matching is not perfect despite the hypothesis");
        return out;
    }

    // Matching mode: greedy construction of the path of excellent edges.
    // Target size is floor(alpha * t); alpha and t are positive, so integer
    // division of numerator by denominator is the floor.
    const rational at = alpha * rational(t);
    const bigint floor_big = boost::multiprecision::numerator(at) /
                             boost::multiprecision::denominator(at);
    const std::int64_t floor_at = floor_big.template convert_to<std::int64_t>();
    if (floor_at <= 0) return out;

    const auto parts = p.parts();
    std::vector<bool> covered(c.n, false);

    // Seed: lexicographically least excellent top edge.
    std::optional<Edge> seed;
    for (const Edge& e : top.edges)
        if (is_excellent(e, c)) { seed = e; break; }
    if (!seed) throw error("no excellent edge despite the hypothesis");

    // Orient the edge by part: position i holds its vertex in part i.
    auto orient = [&](const Edge& e) {
        std::vector<int> out_v(k);
        for (int v : e) out_v[p.part_of[v]] = v;
        return out_v;
    };

    std::vector<int> path_vertices = orient(*seed);
    std::vector<Edge> matching{*seed};
    for (int v : *seed) covered[v] = true;

    while (static_cast<std::int64_t>(matching.size()) < floor_at) {
        // One round: replace the current edge coordinate by coordinate.
        std::vector<int> cur(path_vertices.end() - k, path_vertices.end());
        for (int i = 0; i < k; ++i) {
            // Candidate v in part i, uncovered, keeping the mixed edge
            // excellent: every subset of the new coordinate set must be
            // present once v joins.
            Edge others;
            for (int j = 0; j < k; ++j)
                if (j != i) others.push_back(cur[j]);
            std::sort(others.begin(), others.end());
            int chosen = -1;
            for (int v : parts[i]) {
                if (covered[v]) continue;
                bool ok = true;
                for_each_subset_mask(others, [&](const Edge& sub) {
                    if (ok && !c.has(edge_insert(sub, v))) ok = false;
                });
                if (ok) { chosen = v; break; }
            }
            if (chosen < 0)
                throw error("greedy extension ran out of candidates despite the hypothesis");
            cur[i] = chosen;
            path_vertices.push_back(chosen);
        }
        Edge next = sorted_copy(Edge(cur.begin(), cur.end()));
        for (int v : next) covered[v] = true;
        matching.push_back(next);
    }

    // The path visits each vertex once and every window spans an edge.
    WalkCheck chk = verify_tight(path_vertices, top, false, true);
    if (!chk.ok) throw error("greedy path failed verification: " + chk.defect->what);
    out.path = TightWalk{k, path_vertices, false};

    // All matching edges sit in one tight component.
    int comp = -1;
    for (const Edge& e : matching) {
        auto it = std::lower_bound(top.edges.begin(), top.edges.end(), e);
        int label = tc.label[static_cast<std::size_t>(it - top.edges.begin())];
        if (comp < 0) comp = label;
        if (label != comp) throw error("matching edges landed in different tight components");
    }
    out.component = comp;
    out.matching = Matching{std::move(matching)};
    return out;
}

}  // namespace hyperslice
