// compress.hpp - vertex-shift compression, degree pruning, and the
// compression route to large matchings
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "matching.hpp"

namespace hyperslice {

// ---------------------------------------------------------------------------
// One compression step.
//
// For vertices i < j, every set e with i not in e, j in e, and the shifted
// set e - j + i absent is replaced by that shifted set.  The substitution is
// applied simultaneously within each level; sets whose shift is already
// present stay as they are, so no two sets collide.  Level counts are
// preserved and down-closure is maintained.

inline Complex compress_ij(const Complex& c, int i, int j) {
    if (i >= j) throw invalid_query("compression needs i < j");
    if (i < 0 || j >= c.n) throw invalid_query("compression vertices out of range");
    Complex out = empty_complex(c.k, c.n);
    for (std::size_t lvl = 0; lvl < c.levels.size(); ++lvl) {
        auto& dst = out.levels[lvl];
        for (const Edge& e : c.levels[lvl]) {
            if (!contains_vertex(e, j) || contains_vertex(e, i)) {
                dst.push_back(e);
                continue;
            }
            Edge shifted = edge_insert(edge_erase(e, j), i);
            dst.push_back(c.has(shifted) ? e : shifted);
        }
        std::sort(dst.begin(), dst.end());
        for (std::size_t x = 1; x < dst.size(); ++x)
            if (dst[x - 1] == dst[x]) throw error("compression produced a collision");
    }
    return out;
}

// True when no compression step changes the complex.
inline bool is_fully_compressed(const Complex& c) {
    for (std::size_t lvl = 1; lvl < c.levels.size(); ++lvl)
        for (const Edge& e : c.levels[lvl])
            for (int j : e)
                for (int i = 0; i < j; ++i) {
                    if (contains_vertex(e, i)) continue;
                    if (!c.has(edge_insert(edge_erase(e, j), i))) return false;
                }
    return true;
}

// Applies compression steps for all pairs i < j in lexicographic order,
// sweeping until a full pass changes nothing.  Terminates because each
// effective step strictly decreases the total vertex-label sum.
inline Complex fully_compress(const Complex& c) {
    Complex cur = c;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < cur.n; ++i)
            for (int j = i + 1; j < cur.n; ++j) {
                Complex next = compress_ij(cur, i, j);
                if (!(next == cur)) {
                    cur = std::move(next);
                    changed = true;
                }
            }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Low-degree pruning.
//
// Repeatedly deletes any set at level l <= k-1 (the empty set included) with
// fewer than (k-l)*r extensions one level up, together with every superset.
// The result is the greatest fixpoint: it does not depend on deletion order.

inline Complex prune_low_degree(const Complex& c, std::int64_t r) {
    if (r < 0) throw invalid_query("prune threshold must be nonnegative");
    Complex cur = c;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int lvl = 0; lvl <= cur.k - 1 && !changed; ++lvl) {
            for (const Edge& e : cur.levels[lvl]) {
                const std::int64_t need = static_cast<std::int64_t>(cur.k - lvl) * r;
                if (static_cast<std::int64_t>(degree_up(e, cur)) >= need) continue;
                // Delete e and every superset of e, at every level.
                Complex next = empty_complex(cur.k, cur.n);
                for (std::size_t l2 = 0; l2 < cur.levels.size(); ++l2)
                    for (const Edge& f : cur.levels[l2])
                        if (!is_subset(e, f)) next.levels[l2].push_back(f);
                cur = std::move(next);
                changed = true;
                break;
            }
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Matchings through compression.
//
// Hypothesis: the top two level counts satisfy e_k >= (r-1) e_{k-1} + 1.
// The complex is alternately pruned (threshold r) and fully compressed until
// both maps fix it, after which the structure supports the explicit matching
//   m-th edge = { m, r + m, 2r + m, ..., (k-1)r + m },   m = 0 .. r-1.
// The matching is validated in the processed complex; it certifies that the
// original complex also has matching number at least r, since both maps can
// only lower the matching number.

struct CompressTrace {
    // One entry per applied stage: stage name and level counts afterwards.
    std::vector<std::pair<std::string, std::vector<std::uint64_t>>> stages;
};

struct RatioMatching {
    Matching matching;
    Complex processed;
};

inline RatioMatching ratio_matching(const Complex& c, std::int64_t r,
                                               CompressTrace* trace = nullptr) {
    if (r < 1) throw invalid_query("target matching size must be at least 1");
    const std::uint64_t ek = c.levels[c.k].size();
    const std::uint64_t ek1 = c.levels[c.k - 1].size();
    const bigint need = bigint(r - 1) * bigint(ek1) + 1;
    if (bigint(ek) < need) {
        const bigint deficit = need - bigint(ek);
        throw hypothesis_violated(
            "level-ratio", "top level has " + std::to_string(ek) + " edges but needs " +
                               need.str() + " (short by " + deficit.str() + ")");
    }
    auto record = [&](const char* name, const Complex& x) {
        if (trace) trace->stages.emplace_back(name, level_counts(x));
    };
    Complex cur = c;
    record("input", cur);
    while (true) {
        Complex pruned = prune_low_degree(cur, r);
        if (!(pruned == cur)) record("prune", pruned);
        Complex compressed = fully_compress(pruned);
        if (!(compressed == pruned)) record("compress", compressed);
        const bool fixed = compressed == cur;
        cur = std::move(compressed);
        if (fixed) break;
    }
    if (cur.is_empty())
        throw error("processing emptied the complex despite the level-ratio hypothesis");
    if (static_cast<std::int64_t>(cur.levels[1].size()) < static_cast<std::int64_t>(cur.k) * r)
        throw error("processed complex has fewer than k*r live vertices");

    Matching m;
    for (std::int64_t mm = 0; mm < r; ++mm) {
        Edge e;
        for (int step = 0; step < cur.k; ++step)
            e.push_back(static_cast<int>(static_cast<std::int64_t>(step) * r + mm));
        if (!cur.has(e))
            throw error("expected matching edge is missing from the processed complex");
        m.edges.push_back(std::move(e));
    }

    // Cheap cross-check on small instances: the original top level really
    // does carry r disjoint edges.
    if (c.n <= 12 && matching_number(top_level(c)) < r)
        throw error("matching number of the input fell below the certified bound");

    return RatioMatching{std::move(m), std::move(cur)};
}

}  // namespace hyperslice
