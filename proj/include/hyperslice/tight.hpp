// tight.hpp - tight walks, paths, cycles, components, and walk search
//
// A tight walk in a k-graph is a vertex sequence in which every window of k
// consecutive vertices spans an edge.  Paths additionally have all vertices
// distinct; cycles wrap around.  The length of a walk is its number of
// windows: vertices - k + 1 for open walks and exactly the vertex count for
// cycles.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"

namespace hyperslice {

struct TightWalk {
    int k = 1;
    std::vector<int> vertices;
    bool cyclic = false;

    int length() const {
        if (cyclic) return static_cast<int>(vertices.size());
        return static_cast<int>(vertices.size()) - k + 1;
    }

    // Ordered window starting at position i (cyclic walks wrap).
    std::vector<int> window(int i) const {
        std::vector<int> out(k);
        for (int j = 0; j < k; ++j)
            out[j] = vertices[(i + j) % static_cast<int>(vertices.size())];
        return out;
    }

    std::vector<int> initial_tuple() const {  // first k-1 vertices
        return std::vector<int>(vertices.begin(), vertices.begin() + (k - 1));
    }

    std::vector<int> terminal_tuple() const {  // last k-1 vertices
        return std::vector<int>(vertices.end() - (k - 1), vertices.end());
    }

    bool operator==(const TightWalk& o) const {
        return k == o.k && vertices == o.vertices && cyclic == o.cyclic;
    }
};

struct WalkDefect {
    int window = -1;           // offending window start, or -1
    Edge window_set;           // the window as a set, when relevant
    std::string what;
};

struct WalkCheck {
    bool ok = false;
    std::optional<WalkDefect> defect;
};

// Checks that seq is a tight walk in g.  With require_path, vertices must be
// pairwise distinct (a path, or a cycle visiting each vertex once).  Cycles
// must have at least k+1 vertices unless allow_short_cycle is set, in which
// case k vertices (a single edge traversed cyclically) are accepted.
inline WalkCheck verify_tight(const std::vector<int>& seq, const KGraph& g, bool cyclic,
                              bool require_path, bool allow_short_cycle = false) {
    WalkCheck out;
    const int k = g.k;
    const int m = static_cast<int>(seq.size());
    auto fail = [&](WalkDefect d) {
        out.ok = false;
        out.defect = std::move(d);
        return out;
    };
    for (int v : seq)
        if (v < 0 || v >= g.n)
            return fail({-1, {}, "vertex " + std::to_string(v) + " out of range"});
    if (cyclic) {
        const int least = allow_short_cycle ? k : k + 1;
        if (m < least)
            return fail({-1, {}, "cycle needs at least " + std::to_string(least) + " vertices"});
    } else if (m < k - 1) {
        return fail({-1, {}, "walk needs at least k-1 vertices"});
    }
    if (require_path) {
        std::vector<int> s = seq;
        std::sort(s.begin(), s.end());
        if (!is_sorted_unique(s)) return fail({-1, {}, "vertices are not distinct"});
    }
    const int windows = cyclic ? m : m - k + 1;
    for (int i = 0; i < windows; ++i) {
        Edge w(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) w[j] = seq[(i + j) % m];
        std::sort(w.begin(), w.end());
        if (!is_sorted_unique(w))
            return fail({i, w, "window repeats a vertex"});
        if (!g.has_edge(w))
            return fail({i, w, "window is not an edge"});
    }
    out.ok = true;
    return out;
}

inline TightWalk make_walk(const KGraph& g, std::vector<int> vertices, bool cyclic = false,
                           bool allow_short_cycle = false) {
    WalkCheck c = verify_tight(vertices, g, cyclic, false, allow_short_cycle);
    if (!c.ok) throw invalid_query("not a tight walk: " + c.defect->what);
    return TightWalk{g.k, std::move(vertices), cyclic};
}

// ---------------------------------------------------------------------------
// Tight components
//
// Two edges are adjacent when they share k-1 vertices; tight components are
// the transitive closure.  Edges are bucketed by their (k-1)-subsets and the
// buckets merged with union-find.

struct TightComponents {
    std::vector<int> label;  // component id per edge index of g.edges
    int count = 0;
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace detail

inline TightComponents tight_components(const KGraph& g) {
    detail::UnionFind uf(g.edges.size());
    std::map<Edge, int> bucket;  // (k-1)-subset -> first edge index seen
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        for (int drop = 0; drop < g.k; ++drop) {
            Edge sub = e;
            sub.erase(sub.begin() + drop);
            auto [it, fresh] = bucket.emplace(sub, static_cast<int>(i));
            if (!fresh) uf.unite(it->second, static_cast<int>(i));
        }
    }
    TightComponents out;
    out.label.resize(g.edges.size());
    std::map<int, int> renumber;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        auto [it, fresh] = renumber.emplace(root, out.count);
        if (fresh) ++out.count;
        out.label[i] = it->second;
    }
    return out;
}

// The subgraph formed by one tight component.
inline KGraph component_graph(const KGraph& g, const TightComponents& tc, int component) {
    if (component < 0 || component >= tc.count) throw invalid_query("component id out of range");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (tc.label[i] == component) edges.push_back(g.edges[i]);
    return KGraph{g.k, g.n, std::move(edges)};
}

// ---------------------------------------------------------------------------
// Minimum tight walks between edges
//
// BFS over ordered (k-1)-tuples.  The frontier starts from all orderings of
// the source edge; a state is final when its tuple plus one more vertex of
// the target traverses the target edge, i.e. when the walk's last window
// equals the target as a set.  Expanding states in lexicographic order makes
// the returned walk the lexicographically least among minimum-length walks.

inline TightWalk min_tight_walk(const KGraph& g, const Edge& from, const Edge& to) {
    if (!g.has_edge(from) || !g.has_edge(to)) throw invalid_query("endpoint is not an edge");
    const int k = g.k;

    auto is_goal = [&](const std::vector<int>& window) {
        Edge s = window;
        std::sort(s.begin(), s.end());
        return s == to;
    };

    // Per layer, each state (ordered terminal tuple) keeps the lexicographic
    // minimum among its minimum-length prefixes.  Two prefixes reaching the
    // same state have equal length, so the final walk through a state is
    // least exactly when its stored prefix is least.
    std::map<std::vector<int>, std::vector<int>> layer;  // tuple -> full prefix
    std::set<std::vector<int>> seen;

    std::vector<int> perm = from;
    std::sort(perm.begin(), perm.end());
    std::optional<TightWalk> best;
    do {
        if (is_goal(perm)) {
            TightWalk cand{k, perm, false};
            if (!best || cand.vertices < best->vertices) best = cand;
            continue;
        }
        std::vector<int> tuple(perm.begin() + 1, perm.end());
        auto [it, fresh] = layer.emplace(tuple, perm);
        if (!fresh && perm < it->second) it->second = perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best) return *best;  // from == to: the edge itself, sorted
    for (const auto& [tuple, prefix] : layer) seen.insert(tuple);

    while (!layer.empty()) {
        std::map<std::vector<int>, std::vector<int>> next;
        for (const auto& [tuple, prefix] : layer) {
            for (int v = 0; v < g.n; ++v) {
                Edge w(tuple.begin(), tuple.end());
                w.push_back(v);
                std::sort(w.begin(), w.end());
                if (!is_sorted_unique(w) || !g.has_edge(w)) continue;
                std::vector<int> window(tuple.begin(), tuple.end());
                window.push_back(v);
                std::vector<int> walk = prefix;
                walk.push_back(v);
                if (is_goal(window)) {
                    TightWalk cand{k, walk, false};
                    if (!best || cand.vertices < best->vertices) best = cand;
                    continue;
                }
                std::vector<int> nt(window.begin() + 1, window.end());
                if (seen.count(nt)) continue;
                auto [it, fresh] = next.emplace(nt, walk);
                if (!fresh && walk < it->second) it->second = walk;
            }
        }
        if (best) return *best;
        for (const auto& [tuple, prefix] : next) seen.insert(tuple);
        layer = std::move(next);
    }
    throw not_tightly_connected("no tight walk joins the two edges");
}

// ---------------------------------------------------------------------------
// Walk algebra

// Joins two open walks whose terminal and initial (k-1)-tuples agree as
// ordered tuples.  Lengths add.
inline TightWalk concatenate(const TightWalk& a, const TightWalk& b) {
    if (a.k != b.k) throw invalid_query("walks have different uniformities");
    if (a.cyclic || b.cyclic) throw invalid_query("only open walks concatenate");
    if (a.terminal_tuple() != b.initial_tuple())
        throw tuple_mismatch("terminal tuple of the first walk differs from the initial tuple of the second");
    TightWalk out{a.k, a.vertices, false};
    out.vertices.insert(out.vertices.end(), b.vertices.begin() + (a.k - 1), b.vertices.end());
    return out;
}

// Builds the walk that traverses the (k-1)-vertex windows of w in reverse
// order, each window kept in forward internal order.  The result starts at
// w's terminal tuple and ends at its initial tuple, and its length is
// (k-1) * length(w).  For k = 2 the construction degenerates to the reversed
// vertex sequence.
inline TightWalk reversing_walk(const KGraph& g, const TightWalk& w) {
    if (w.cyclic) throw invalid_query("reversing walk is defined for open walks");
    if (w.k != g.k) throw invalid_query("walk uniformity differs from host");
    const int k = w.k;
    const int m = static_cast<int>(w.vertices.size());
    std::vector<int> out;
    for (int start = m - (k - 1); start >= 0; --start)
        for (int j = 0; j < k - 1; ++j) out.push_back(w.vertices[start + j]);
    WalkCheck c = verify_tight(out, g, false, false);
    if (!c.ok)
        throw invalid_query("host does not support the reversing walk: " + c.defect->what);
    return TightWalk{k, std::move(out), false};
}

// ---------------------------------------------------------------------------
// Cycle length planning
//
// A cycle assembled from three fixed spine paths, per-segment repetitions
// n_i, and connecting walks W_i has exactly
//     (3 + sum n_i) * k  +  (sum l(W_i)) * (k + 1)
// edges.  The walk lengths must sum to a multiple of k, which makes the
// total divisible by k as well.  Optional bounds cap each n_i at
// (1 - 3 alpha) w_i m.

struct CyclePlanBounds {
    rational alpha;                 // per-segment repetition headroom factor
    std::vector<rational> weights;  // w_i, one per repeat entry
    std::int64_t scale = 0;         // m, the common scale
};

inline std::int64_t plan_cycle_length(int k, const std::vector<std::int64_t>& repeats,
                                      const std::vector<std::int64_t>& walk_lengths,
                                      const std::optional<CyclePlanBounds>& bounds = {}) {
    if (k < 2) throw invalid_query("cycle planning needs uniformity at least 2");
    std::int64_t nsum = 0, lsum = 0;
    for (std::int64_t n : repeats) {
        if (n < 0) throw invalid_query("repeat counts must be nonnegative");
        nsum += n;
    }
    for (std::int64_t l : walk_lengths) {
        if (l < 0) throw invalid_query("walk lengths must be nonnegative");
        lsum += l;
    }
    if (lsum % k != 0)
        throw invalid_query("connecting walk lengths sum to " + std::to_string(lsum) +
                            ", not a multiple of " + std::to_string(k));
    if (bounds) {
        if (bounds->weights.size() != repeats.size())
            throw invalid_query("need one weight per repeat entry");
        for (std::size_t i = 0; i < repeats.size(); ++i) {
            const rational cap = (1 - 3 * bounds->alpha) * bounds->weights[i] * bounds->scale;
            if (rational(repeats[i]) > cap)
                throw invalid_query("repeat count " + std::to_string(repeats[i]) +
                                    " exceeds its headroom bound in segment " + std::to_string(i));
        }
    }
    return (3 + nsum) * k + lsum * (k + 1);
}

// ---------------------------------------------------------------------------
// Search for tight substructures
//
// Three-valued outcome: a witness, a certified negative after exhausting the
// whole search space, or a budget exhaustion with the best partial result.

enum class SearchStatus { Found, ExhaustiveNegative, BudgetExhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::ExhaustiveNegative;
    std::optional<TightWalk> witness;
    std::uint64_t expansions = 0;  // vertex placements attempted
    int best_vertices = 0;         // for the longest-* searches
};

namespace detail {

struct SearchCtx {
    const KGraph& g;
    std::uint64_t budget;
    std::uint64_t expansions = 0;
    bool exhausted = false;

    bool spend() {
        if (expansions >= budget) {
            exhausted = true;
            return false;
        }
        ++expansions;
        return true;
    }
};

// Depth-first extension for an exact cycle on `len` vertices.  Position 0 is
// pinned to the least vertex of the cycle, so every cycle is generated once
// per direction; candidate vertices therefore all exceed seq[0].
inline bool cycle_dfs(SearchCtx& ctx, std::vector<int>& seq, std::vector<bool>& used, int len,
                      std::optional<TightWalk>& found) {
    const int k = ctx.g.k;
    const int pos = static_cast<int>(seq.size());
    if (pos == len) {
        for (int i = len - k + 1; i < len; ++i) {
            Edge w(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) w[j] = seq[(i + j) % len];
            std::sort(w.begin(), w.end());
            if (!ctx.g.has_edge(w)) return true;
        }
        found = TightWalk{k, seq, true};
        return false;
    }
    for (int v = seq[0] + 1; v < ctx.g.n; ++v) {
        if (used[v]) continue;
        if (!ctx.spend()) return false;
        if (pos >= k - 1) {
            Edge w(seq.end() - (k - 1), seq.end());
            w.push_back(v);
            std::sort(w.begin(), w.end());
            if (!ctx.g.has_edge(w)) continue;
        }
        seq.push_back(v);
        used[v] = true;
        bool keep = cycle_dfs(ctx, seq, used, len, found);
        seq.pop_back();
        used[v] = false;
        if (!keep) return false;
    }
    return true;
}

inline void longest_path_dfs(SearchCtx& ctx, std::vector<int>& seq, std::vector<bool>& used,
                             std::optional<TightWalk>& best) {
    const int k = ctx.g.k;
    if (!best || seq.size() > best->vertices.size())
        best = TightWalk{k, seq, false};
    for (int v = 0; v < ctx.g.n; ++v) {
        if (used[v]) continue;
        if (!ctx.spend()) return;
        Edge w(seq.end() - (k - 1), seq.end());
        w.push_back(v);
        std::sort(w.begin(), w.end());
        if (!ctx.g.has_edge(w)) continue;
        seq.push_back(v);
        used[v] = true;
        longest_path_dfs(ctx, seq, used, best);
        seq.pop_back();
        used[v] = false;
        if (ctx.exhausted) return;
    }
}

}  // namespace detail

// Finds a tight cycle on exactly `len` vertices.  Cycles shorter than k+1
// vertices are rejected unless allow_short_cycle is set, which admits len = k
// (a single edge closed up).
inline SearchResult search_tight_cycle(const KGraph& g, int len, std::uint64_t budget,
                                       bool allow_short_cycle = false) {
    const int least = allow_short_cycle ? g.k : g.k + 1;
    if (len < least)
        throw invalid_query("cycle length below the minimum of " + std::to_string(least));
    SearchResult out;
    if (len > g.n) {
        out.status = SearchStatus::ExhaustiveNegative;
        return out;
    }
    detail::SearchCtx ctx{g, budget};
    std::optional<TightWalk> found;
    for (int v0 = 0; v0 + len <= g.n && !found; ++v0) {
        std::vector<int> seq{v0};
        std::vector<bool> used(g.n, false);
        used[v0] = true;
        if (!detail::cycle_dfs(ctx, seq, used, len, found) && !found) break;  // budget
        if (ctx.exhausted) break;
    }
    out.expansions = ctx.expansions;
    if (found) {
        out.status = SearchStatus::Found;
        out.witness = std::move(found);
        out.best_vertices = len;
    } else if (ctx.exhausted) {
        out.status = SearchStatus::BudgetExhausted;
    } else {
        out.status = SearchStatus::ExhaustiveNegative;
    }
    return out;
}

// Finds the longest tight cycle by scanning candidate lengths downward.  The
// answer is certified only if every longer length was exhausted.
inline SearchResult search_longest_cycle(const KGraph& g, std::uint64_t budget,
                                         bool allow_short_cycle = false) {
    const int least = allow_short_cycle ? g.k : g.k + 1;
    SearchResult out;
    std::uint64_t left = budget;
    for (int len = g.n; len >= least; --len) {
        SearchResult sub = search_tight_cycle(g, len, left, allow_short_cycle);
        out.expansions += sub.expansions;
        left -= std::min(left, sub.expansions);
        if (sub.status == SearchStatus::Found) {
            sub.expansions = out.expansions;
            return sub;
        }
        if (sub.status == SearchStatus::BudgetExhausted) {
            out.status = SearchStatus::BudgetExhausted;
            return out;
        }
    }
    out.status = SearchStatus::ExhaustiveNegative;  // no cycle at all
    return out;
}

// Finds the longest tight path.  Walks of k-1 vertices (no window) count as
// degenerate paths, so a graph with no edges still has a best path when
// n >= k-1.
inline SearchResult search_longest_path(const KGraph& g, std::uint64_t budget) {
    SearchResult out;
    detail::SearchCtx ctx{g, budget};
    std::optional<TightWalk> best;
    if (g.n >= g.k - 1) {
        std::vector<int> degenerate;
        for (int v = 0; v < g.k - 1; ++v) degenerate.push_back(v);
        best = TightWalk{g.k, degenerate, false};
    }
    for (const Edge& e : g.edges) {
        std::vector<int> perm = e;
        do {
            if (ctx.exhausted) break;
            std::vector<int> seq = perm;
            std::vector<bool> used(g.n, false);
            for (int v : seq) used[v] = true;
            detail::longest_path_dfs(ctx, seq, used, best);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (ctx.exhausted) break;
    }
    out.expansions = ctx.expansions;
    if (best) {
        out.witness = best;
        out.best_vertices = static_cast<int>(best->vertices.size());
    }
    out.status = ctx.exhausted ? SearchStatus::BudgetExhausted
                               : (best ? SearchStatus::Found : SearchStatus::ExhaustiveNegative);
    return out;
}

}  // namespace hyperslice
