// core.hpp - k-uniform hypergraphs, k-complexes, and ground partitions
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "util.hpp"

namespace hyperslice {

// ---------------------------------------------------------------------------
// KGraph: a k-uniform hypergraph on vertex set {0..n-1}.
//
// Edges are stored sorted ascending, and the edge list itself is sorted
// lexicographically with no duplicates, so equality is structural equality.

struct KGraph {
    int k = 1;
    int n = 0;
    std::vector<Edge> edges;

    bool has_edge(const Edge& e) const {
        return std::binary_search(edges.begin(), edges.end(), e);
    }

    std::uint64_t edge_count() const { return edges.size(); }

    bool operator==(const KGraph& o) const {
        return k == o.k && n == o.n && edges == o.edges;
    }
};

// Validates and canonicalizes: sorts each edge, sorts the list, rejects
// duplicates, out-of-range vertices, and wrong arities.
inline KGraph make_kgraph(int k, int n, std::vector<Edge> edges) {
    if (k < 1) throw invalid_query("uniformity must be at least 1");
    if (n < 0) throw invalid_query("vertex count must be nonnegative");
    for (Edge& e : edges) {
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != k)
            throw invalid_query("edge has " + std::to_string(e.size()) +
                                " vertices, expected " + std::to_string(k));
        if (!is_sorted_unique(e)) throw invalid_query("edge has a repeated vertex");
        if (!e.empty() && (e.front() < 0 || e.back() >= n))
            throw invalid_query("edge vertex out of range [0," + std::to_string(n) + ")");
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i - 1] == edges[i]) throw invalid_query("duplicate edge");
    return KGraph{k, n, std::move(edges)};
}

inline KGraph empty_kgraph(int k, int n) { return make_kgraph(k, n, {}); }

// ---------------------------------------------------------------------------
// Complex: a k-complex on {0..n-1}; levels[i] holds the i-edges for 0 <= i <= k.
//
// A nonempty complex is down-closed and contains the empty set, so
// levels[0] is {∅} exactly when the complex is nonempty.  The all-empty
// complex is the valid representation of "no edges at all".

struct Complex {
    int k = 1;
    int n = 0;
    std::vector<std::vector<Edge>> levels;  // size k+1; each sorted, unique

    bool has(const Edge& e) const {
        const std::size_t i = e.size();
        if (i >= levels.size()) return false;
        return std::binary_search(levels[i].begin(), levels[i].end(), e);
    }

    std::uint64_t size() const {
        std::uint64_t out = 0;
        for (const auto& lv : levels) out += lv.size();
        return out;
    }

    bool is_empty() const { return size() == 0; }

    bool operator==(const Complex& o) const {
        return k == o.k && n == o.n && levels == o.levels;
    }
};

inline Complex empty_complex(int k, int n) {
    Complex c;
    c.k = k;
    c.n = n;
    c.levels.assign(static_cast<std::size_t>(k) + 1, {});
    return c;
}

// Validates level sizes, sortedness, ranges, down-closure, and the
// empty-set convention described on Complex.
inline Complex make_complex(int k, int n, std::vector<std::vector<Edge>> levels) {
    if (k < 1) throw invalid_query("uniformity must be at least 1");
    if (n < 0) throw invalid_query("vertex count must be nonnegative");
    if (levels.size() != static_cast<std::size_t>(k) + 1)
        throw invalid_query("complex must have exactly k+1 levels");
    Complex c;
    c.k = k;
    c.n = n;
    c.levels = std::move(levels);
    for (int i = 0; i <= k; ++i) {
        auto& lv = c.levels[i];
        for (Edge& e : lv) {
            std::sort(e.begin(), e.end());
            if (static_cast<int>(e.size()) != i)
                throw invalid_query("level " + std::to_string(i) + " holds a set of size " +
                                    std::to_string(e.size()));
            if (!is_sorted_unique(e)) throw invalid_query("set has a repeated vertex");
            if (!e.empty() && (e.front() < 0 || e.back() >= n))
                throw invalid_query("vertex out of range [0," + std::to_string(n) + ")");
        }
        std::sort(lv.begin(), lv.end());
        for (std::size_t j = 1; j < lv.size(); ++j)
            if (lv[j - 1] == lv[j]) throw invalid_query("duplicate set in level " + std::to_string(i));
    }
    if (c.levels[0].size() > 1) throw invalid_query("level 0 can only hold the empty set");
    bool any = false;
    for (const auto& lv : c.levels) any = any || !lv.empty();
    if (any && c.levels[0].empty())
        throw invalid_query("nonempty complex must contain the empty set");
    // Down-closure: every (i-1)-subset of an i-edge is present.
    for (int i = 1; i <= k; ++i) {
        for (const Edge& e : c.levels[i]) {
            for (int drop = 0; drop < i; ++drop) {
                Edge sub = e;
                sub.erase(sub.begin() + drop);
                if (!c.has(sub))
                    throw invalid_query("complex is not down-closed at level " + std::to_string(i));
            }
        }
    }
    return c;
}

// Down-closure of a k-graph: all subsets of edges, level by level.  The empty
// graph yields the all-empty complex.
inline Complex down_closure(const KGraph& g, Capacity cap = {}) {
    const std::uint64_t total = g.edge_count() << g.k;
    if (total > cap.max_sets)
        throw capacity_exceeded("down-closure would enumerate " + std::to_string(total) + " sets");
    Complex c = empty_complex(g.k, g.n);
    if (g.edges.empty()) return c;
    for (int i = 0; i <= g.k; ++i) {
        auto& lv = c.levels[i];
        for (const Edge& e : g.edges)
            for_each_subset_of(e, i, [&](const Edge& sub) { lv.push_back(sub); });
        std::sort(lv.begin(), lv.end());
        lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    }
    return c;
}

// Top level of a complex as a plain k-graph.
inline KGraph top_level(const Complex& c) { return KGraph{c.k, c.n, c.levels[c.k]}; }

// Level i of a complex as an i-uniform graph (i >= 1).
inline KGraph level_graph(const Complex& c, int i) {
    if (i < 1 || i > c.k) throw invalid_query("level out of range");
    return KGraph{i, c.n, c.levels[i]};
}

// e_i for i = 0..k.
inline std::vector<std::uint64_t> level_counts(const Complex& c) {
    std::vector<std::uint64_t> out;
    out.reserve(c.levels.size());
    for (const auto& lv : c.levels) out.push_back(lv.size());
    return out;
}

// ---------------------------------------------------------------------------
// Degrees and supported sets

// Number of edges of g containing the set s (|s| <= k).
inline std::uint64_t degree(const Edge& s, const KGraph& g) {
    if (!is_sorted_unique(s)) throw invalid_query("degree query set must be sorted and distinct");
    std::uint64_t out = 0;
    for (const Edge& e : g.edges)
        if (is_subset(s, e)) ++out;
    return out;
}

// Number of sets in level |s|+1 of the complex that contain s.
inline std::uint64_t degree_up(const Edge& s, const Complex& c) {
    const int i = static_cast<int>(s.size());
    if (i >= c.k + 1) throw invalid_query("set too large for an extension query");
    std::uint64_t out = 0;
    if (i + 1 < static_cast<int>(c.levels.size()))
        for (const Edge& e : c.levels[i + 1])
            if (is_subset(s, e)) ++out;
    return out;
}

// All i-sets of {0..n-1} whose every (i-1)-subset is an edge of base
// (base is an (i-1)-uniform graph).  For i-1 = 0 this is all i-sets.
inline KGraph supported_sets(const KGraph& base, int i, Capacity cap = {}) {
    if (i != base.k + 1)
        throw invalid_query("supported_sets expects i = uniformity(base) + 1");
    const bigint total = binomial(base.n, i);
    if (total > bigint(cap.max_sets))
        throw capacity_exceeded("supported-set enumeration would visit " + total.str() + " sets");
    std::vector<Edge> out;
    for_each_subset(base.n, i, [&](const Edge& s) {
        for (int drop = 0; drop < i; ++drop) {
            Edge sub = s;
            sub.erase(sub.begin() + drop);
            if (!base.has_edge(sub)) return;
        }
        out.push_back(s);
    });
    return KGraph{i, base.n, std::move(out)};
}

// ---------------------------------------------------------------------------
// GroundPartition: a partition of {0..n-1} into t named parts 0..t-1.

struct GroundPartition {
    int t = 0;
    std::vector<int> part_of;  // vertex -> part id

    int n() const { return static_cast<int>(part_of.size()); }

    std::vector<std::vector<int>> parts() const {
        std::vector<std::vector<int>> out(t);
        for (int v = 0; v < n(); ++v) out[part_of[v]].push_back(v);
        return out;
    }

    bool equal_sizes() const {
        std::vector<int> sz(t, 0);
        for (int p : part_of) ++sz[p];
        for (int s : sz)
            if (s != sz[0]) return false;
        return true;
    }

    bool operator==(const GroundPartition& o) const {
        return t == o.t && part_of == o.part_of;
    }
};

inline GroundPartition make_partition(int t, std::vector<int> part_of) {
    if (t < 1) throw invalid_query("partition needs at least one part");
    std::vector<bool> seen(t, false);
    for (int p : part_of) {
        if (p < 0 || p >= t) throw invalid_query("part id out of range");
        seen[p] = true;
    }
    for (int p = 0; p < t; ++p)
        if (!seen[p]) throw invalid_query("part " + std::to_string(p) + " is empty");
    return GroundPartition{t, std::move(part_of)};
}

// Parts of consecutive vertices: part i is {i*per .. (i+1)*per-1}.
inline GroundPartition contiguous_partition(int t, int per) {
    if (per < 1) throw invalid_query("part size must be positive");
    std::vector<int> part_of(static_cast<std::size_t>(t) * per);
    for (int v = 0; v < t * per; ++v) part_of[v] = v / per;
    return make_partition(t, std::move(part_of));
}

// Part of vertex v is v mod t.
inline GroundPartition round_robin_partition(int t, int n) {
    if (n < t) throw invalid_query("need at least one vertex per part");
    std::vector<int> part_of(n);
    for (int v = 0; v < n; ++v) part_of[v] = v % t;
    return make_partition(t, std::move(part_of));
}

// The set of part ids touched by a vertex set (its index).
inline Edge index_of(const Edge& s, const GroundPartition& p) {
    Edge out;
    for (int v : s) {
        if (v < 0 || v >= p.n()) throw invalid_query("vertex out of partition range");
        out.push_back(p.part_of[v]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// True when s has at most one vertex in each part.
inline bool is_partite_set(const Edge& s, const GroundPartition& p) {
    return index_of(s, p).size() == s.size();
}

// ---------------------------------------------------------------------------
// Partite restrictions

// Edges of g whose index equals a (exactly the parts of a, one vertex each
// when |a| = k; touching exactly the parts of a in general).
inline KGraph partite_restrict(const KGraph& g, const GroundPartition& p, const Edge& a) {
    if (!is_sorted_unique(a)) throw invalid_query("index set must be sorted and distinct");
    for (int x : a)
        if (x < 0 || x >= p.t) throw invalid_query("index part out of range");
    std::vector<Edge> out;
    for (const Edge& e : g.edges)
        if (index_of(e, p) == a) out.push_back(e);
    return KGraph{g.k, g.n, std::move(out)};
}

// Level-wise restriction of a complex to sets whose index equals a.
inline Complex partite_restrict(const Complex& c, const GroundPartition& p, const Edge& a) {
    Complex out = empty_complex(c.k, c.n);
    for (std::size_t i = 0; i < c.levels.size(); ++i)
        for (const Edge& e : c.levels[i])
            if (index_of(e, p) == a) out.levels[i].push_back(e);
    return out;
}

// Sets whose index is a proper subset of a ("strictly below" a).  The result
// keeps every level of the input, including the empty set.
inline Complex strictly_below(const Complex& c, const GroundPartition& p, const Edge& a) {
    if (!is_sorted_unique(a)) throw invalid_query("index set must be sorted and distinct");
    Complex out = empty_complex(c.k, c.n);
    for (std::size_t i = 0; i < c.levels.size(); ++i)
        for (const Edge& e : c.levels[i]) {
            Edge idx = index_of(e, p);
            if (idx != a && is_subset(idx, a)) out.levels[i].push_back(e);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Local LYM margin at level i: e_{i-1} - i/(n-i+1) * e_i as an exact rational.
// Nonnegative on every down-closed complex on n vertices.
inline rational local_lym_margin(const Complex& c, int i) {
    if (i < 1 || i > c.k) throw invalid_query("level out of range for LYM margin");
    if (c.n - i + 1 <= 0) throw invalid_query("too few vertices for LYM margin at this level");
    const rational lhs(static_cast<std::uint64_t>(c.levels[i - 1].size()));
    const rational rhs = rational(i, c.n - i + 1) * rational(static_cast<std::uint64_t>(c.levels[i].size()));
    return lhs - rhs;
}

}  // namespace hyperslice
