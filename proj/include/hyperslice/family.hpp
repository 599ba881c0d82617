// family.hpp - labelled partition families, slices, and refinements
//
// A partition family over a ground partition into t clusters of size m
// assigns to every partite i-set of vertices (2 <= i <= k-1) a label in
// {1..1/d_i}, where the density vector d = (d_2..d_{k-1}) has integral
// reciprocals.  The cell of a partite set is determined recursively by the
// cells of its subsets plus its own label; concretely, two i-sets share a
// cell exactly when they touch the same clusters and all their subsets of
// size between 2 and i carry the same labels.
//
// A slice picks one label per cluster i-set and level; its complex holds the
// partite sets all of whose subsets carry the picked labels.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace hyperslice {

struct DensityVector {
    int k = 2;
    std::vector<std::uint64_t> reciprocal;  // reciprocal[i-2] = 1/d_i, i = 2..k-1

    rational density(int i) const {
        if (i < 2 || i > k - 1) throw invalid_query("density level out of range");
        return rational(1, reciprocal[static_cast<std::size_t>(i) - 2]);
    }
    std::uint64_t labels(int i) const {
        if (i < 2 || i > k - 1) throw invalid_query("density level out of range");
        return reciprocal[static_cast<std::size_t>(i) - 2];
    }
};

inline DensityVector make_density_vector(int k, std::vector<std::uint64_t> reciprocal) {
    if (k < 2) throw invalid_query("uniformity must be at least 2");
    if (reciprocal.size() != static_cast<std::size_t>(k - 2))
        throw invalid_query("need one density per level 2..k-1");
    for (std::uint64_t r : reciprocal)
        if (r < 1) throw invalid_query("density reciprocals must be positive integers");
    return DensityVector{k, std::move(reciprocal)};
}

// ---------------------------------------------------------------------------

struct PartitionFamily {
    int k = 2;
    GroundPartition ground;  // t clusters, equal sizes
    DensityVector dv;
    // labels[i-2]: partite i-set -> label in 1..1/d_i
    std::vector<std::map<Edge, int>> labels;

    int t() const { return ground.t; }
    int m() const { return ground.n() / ground.t; }

    int label_of(const Edge& s) const {
        const int i = static_cast<int>(s.size());
        if (i < 2 || i > k - 1) throw invalid_query("label query level out of range");
        const auto& lv = labels[static_cast<std::size_t>(i) - 2];
        auto it = lv.find(s);
        if (it == lv.end()) throw invalid_query("set is not a partite set of this family");
        return it->second;
    }

    // Cell identity of a partite i-set: the clusters it touches plus the
    // labels of all its subsets of size 2..i, subsets in lexicographic order.
    std::vector<int> cell_key(const Edge& s) const {
        std::vector<int> key = index_of(s, ground);
        key.push_back(-1);  // separator between clusters and labels
        for (int sz = 2; sz <= static_cast<int>(s.size()); ++sz)
            for_each_subset_of(s, sz, [&](const Edge& sub) { key.push_back(label_of(sub)); });
        return key;
    }

    bool same_shape(const PartitionFamily& o) const {
        return k == o.k && ground == o.ground && dv.reciprocal == o.dv.reciprocal;
    }
};

// Uniformly random labels, one stream per level.
inline PartitionFamily random_family(int k, int t, int m, DensityVector dv, std::uint64_t seed) {
    if (t < 1 || m < 1) throw invalid_query("need positive cluster count and size");
    if (dv.k != k) throw invalid_query("density vector uniformity mismatch");
    PartitionFamily f;
    f.k = k;
    f.ground = contiguous_partition(t, m);
    f.dv = dv;
    f.labels.resize(static_cast<std::size_t>(std::max(0, k - 2)));
    const int n = t * m;
    for (int i = 2; i <= k - 1; ++i) {
        Rng rng(derive_seed(seed, {0xFA417ull, static_cast<std::uint64_t>(i)}));
        auto& lv = f.labels[static_cast<std::size_t>(i) - 2];
        for_each_subset(n, i, [&](const Edge& s) {
            if (!is_partite_set(s, f.ground)) return;
            lv.emplace(s, static_cast<int>(rng.below(f.dv.labels(i))) + 1);
        });
    }
    return f;
}

// ---------------------------------------------------------------------------

struct Slice {
    int k = 2;
    // chosen[i-2]: cluster i-set -> picked label
    std::vector<std::map<Edge, int>> chosen;

    int choice(const Edge& clusters) const {
        const int i = static_cast<int>(clusters.size());
        const auto& lv = chosen[static_cast<std::size_t>(i) - 2];
        auto it = lv.find(clusters);
        if (it == lv.end()) throw invalid_query("no choice recorded for this cluster set");
        return it->second;
    }
};

// Validates that s could have been drawn from f: same level structure, one
// choice per cluster i-set, labels in range.
inline void require_slice_of(const PartitionFamily& f, const Slice& s) {
    if (s.k != f.k || s.chosen.size() != f.labels.size())
        throw invalid_query("slice does not match the family's level structure");
    for (int i = 2; i <= f.k - 1; ++i) {
        const auto& lv = s.chosen[static_cast<std::size_t>(i) - 2];
        std::uint64_t expect = binomial_u64(f.t(), i);
        if (lv.size() != expect)
            throw invalid_query("slice must pick one label per cluster set at every level");
        for (const auto& [clusters, label] : lv) {
            if (static_cast<int>(clusters.size()) != i || !is_sorted_unique(clusters) ||
                clusters.front() < 0 || clusters.back() >= f.t())
                throw invalid_query("slice keys must be cluster sets of the family");
            if (label < 1 || static_cast<std::uint64_t>(label) > f.dv.labels(i))
                throw invalid_query("slice label out of range for its level");
        }
    }
}

// True when the partite set s lies in the slice's complex: every subset of
// size 2..|s| carries exactly the slice's label for its cluster set.
inline bool slice_contains(const PartitionFamily& f, const Slice& s, const Edge& set) {
    const int sz = static_cast<int>(set.size());
    if (sz > f.k - 1) return false;
    if (!is_partite_set(set, f.ground)) return false;
    bool ok = true;
    for (int i = 2; i <= sz && ok; ++i)
        for_each_subset_of(set, i, [&](const Edge& sub) {
            if (!ok) return;
            if (f.label_of(sub) != s.choice(index_of(sub, f.ground))) ok = false;
        });
    return ok;
}

// Materializes the slice as a (k-1)-complex: levels 0 and 1 are full, level
// i holds the partite i-sets passed by slice_contains.
inline Complex slice_complex(const PartitionFamily& f, const Slice& s, Capacity cap = {}) {
    require_slice_of(f, s);
    const int n = f.ground.n();
    bigint total = 0;
    for (int i = 0; i <= f.k - 1; ++i) total += binomial(n, i);
    if (total > bigint(cap.max_sets))
        throw capacity_exceeded("slice materialization would enumerate " + total.str() + " sets");
    Complex c = empty_complex(f.k - 1, n);
    c.levels[0].push_back({});
    for (int v = 0; v < n; ++v) c.levels[1].push_back({v});
    for (int i = 2; i <= f.k - 1; ++i)
        for_each_subset(n, i, [&](const Edge& set) {
            if (slice_contains(f, s, set)) c.levels[i].push_back(set);
        });
    return c;
}

// Draws the slice whose label choices are independent and uniform; cluster
// sets are visited in lexicographic order per level, so a seed fixes the
// slice completely.
inline Slice sample_slice(const PartitionFamily& f, std::uint64_t seed) {
    Slice s;
    s.k = f.k;
    s.chosen.resize(f.labels.size());
    for (int i = 2; i <= f.k - 1; ++i) {
        Rng rng(derive_seed(seed, {0x51DCEull, static_cast<std::uint64_t>(i)}));
        auto& lv = s.chosen[static_cast<std::size_t>(i) - 2];
        for_each_subset(f.t(), i, [&](const Edge& clusters) {
            lv.emplace(clusters, static_cast<int>(rng.below(f.dv.labels(i))) + 1);
        });
    }
    return s;
}

// Probability of drawing exactly this slice: the product over levels i of
// d_i to the power (number of cluster i-sets).
inline rational slice_probability(const PartitionFamily& f, const Slice& s) {
    require_slice_of(f, s);
    rational p = 1;
    for (int i = 2; i <= f.k - 1; ++i)
        p *= rational_pow(f.dv.density(i), binomial_u64(f.t(), i));
    return p;
}

// All slices of the family in lexicographic order of their choice vectors.
inline std::vector<Slice> enumerate_slices(const PartitionFamily& f, Capacity cap = {}) {
    // Flatten the choice positions: (level, cluster set) pairs.
    std::vector<std::pair<int, Edge>> positions;
    bigint total = 1;
    for (int i = 2; i <= f.k - 1; ++i) {
        for_each_subset(f.t(), i, [&](const Edge& cs) { positions.emplace_back(i, cs); });
        for (std::uint64_t c = 0; c < binomial_u64(f.t(), i); ++c) total *= bigint(f.dv.labels(i));
    }
    if (total > bigint(cap.max_sets))
        throw capacity_exceeded("slice enumeration would visit " + total.str() + " slices");
    std::vector<Slice> out;
    Slice cur;
    cur.k = f.k;
    cur.chosen.resize(f.labels.size());
    if (positions.empty()) {  // k = 2: the unique empty slice
        out.push_back(cur);
        return out;
    }
    std::vector<int> digits(positions.size(), 1);
    while (true) {
        for (std::size_t p = 0; p < positions.size(); ++p)
            cur.chosen[static_cast<std::size_t>(positions[p].first) - 2][positions[p].second] =
                digits[p];
        out.push_back(cur);
        // Increment the mixed-radix counter, most significant digit first so
        // the output is lexicographic in (position order, label).
        std::size_t p = positions.size();
        while (p > 0) {
            --p;
            if (static_cast<std::uint64_t>(digits[p]) < f.dv.labels(positions[p].first)) {
                ++digits[p];
                for (std::size_t q = p + 1; q < positions.size(); ++q) digits[q] = 1;
                break;
            }
            if (p == 0) return out;
        }
    }
}

// ---------------------------------------------------------------------------
// Refinement.
//
// Splits every cluster into p equal parts, assembled uniformly at random.
// Old-partite sets (at most one vertex per old cluster) keep their old
// labels; sets partite for the new clusters but not the old ones get fresh
// uniform labels from an independent stream.

inline PartitionFamily random_refinement(const PartitionFamily& f, int p, std::uint64_t seed) {
    if (p < 1) throw invalid_query("refinement factor must be positive");
    if (f.m() % p != 0) throw invalid_query("cluster size must be divisible by the factor");
    const int t = f.t(), m = f.m(), n = f.ground.n();
    const int m2 = m / p;

    // New cluster ids: old cluster c splits into c*p .. c*p+p-1.
    std::vector<int> part_of(n, -1);
    const auto parts = f.ground.parts();
    for (int c = 0; c < t; ++c) {
        std::vector<int> vs = parts[c];
        Rng rng(derive_seed(seed, {0x5B117ull, static_cast<std::uint64_t>(c)}));
        rng.shuffle(vs);
        for (int pos = 0; pos < m; ++pos) part_of[vs[pos]] = c * p + pos / m2;
    }

    PartitionFamily out;
    out.k = f.k;
    out.ground = make_partition(t * p, std::move(part_of));
    out.dv = f.dv;
    out.labels.resize(f.labels.size());
    for (int i = 2; i <= f.k - 1; ++i) {
        Rng rng(derive_seed(seed, {0xF4E54ull, static_cast<std::uint64_t>(i)}));
        auto& lv = out.labels[static_cast<std::size_t>(i) - 2];
        for_each_subset(n, i, [&](const Edge& s) {
            if (!is_partite_set(s, out.ground)) return;
            if (is_partite_set(s, f.ground))
                lv.emplace(s, f.label_of(s));
            else
                lv.emplace(s, static_cast<int>(rng.below(f.dv.labels(i))) + 1);
        });
    }
    return out;
}

// Checks that `fine` arises from `coarse` the way random_refinement builds
// it: clusters refine cluster-wise, and within every cell of `fine`, the
// members that are old-partite all lie in a single cell of `coarse`.
inline bool generated_from_check(const PartitionFamily& fine, const PartitionFamily& coarse) {
    if (fine.k != coarse.k || fine.dv.reciprocal != coarse.dv.reciprocal) return false;
    if (fine.ground.n() != coarse.ground.n()) return false;
    if (coarse.ground.t == 0 || fine.ground.t % coarse.ground.t != 0) return false;
    // Cluster refinement: each fine cluster sits inside one coarse cluster.
    std::map<int, int> coarse_of;
    for (int v = 0; v < fine.ground.n(); ++v) {
        auto [it, fresh] = coarse_of.emplace(fine.ground.part_of[v], coarse.ground.part_of[v]);
        if (!fresh && it->second != coarse.ground.part_of[v]) return false;
    }
    // Old labels preserved, hence old cells do not split across fine cells.
    for (int i = 2; i <= fine.k - 1; ++i) {
        std::map<std::vector<int>, std::vector<int>> cell_of_cell;
        for (const auto& [s, label] : fine.labels[static_cast<std::size_t>(i) - 2]) {
            if (!is_partite_set(s, coarse.ground)) continue;
            if (coarse.label_of(s) != label) return false;
            auto fine_key = fine.cell_key(s);
            auto coarse_key = coarse.cell_key(s);
            auto [it, fresh] = cell_of_cell.emplace(fine_key, coarse_key);
            if (!fresh && it->second != coarse_key) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Density stability of one-sided subsampling.
//
// For an s-partite s-graph B with parts V_1..V_s (all edges transversal) and
// a factor p dividing |V_1|, a trial draws a uniform subset V' of V_1 of size
// |V_1|/p and compares the density of B[V', V_2, ..] with the density of B.
// The analytic lower bound for P(|d' - d| <= delta) is
//     1 - (4/delta) exp(-delta^4 |V_1| / (32 p^2)),
// which is reported alongside the empirical rate.  At small sizes the bound
// is often vacuous (negative); the comparison still holds trivially.

struct SubsampleReport {
    rational base_density;
    std::uint64_t trials = 0;
    std::uint64_t within = 0;  // trials with |d' - d| <= delta
    double empirical = 0.0;
    double analytic_lower_bound = 0.0;
};

inline SubsampleReport subset_density_test(const KGraph& b, const GroundPartition& parts,
                                           int p, const rational& delta,
                                           std::uint64_t trials, std::uint64_t seed) {
    if (parts.n() != b.n) throw invalid_query("partition does not cover the vertex set");
    if (parts.t != b.k) throw invalid_query("need one part per edge slot");
    if (delta <= 0) throw invalid_query("delta must be positive");
    for (const Edge& e : b.edges)
        if (!is_partite_set(e, parts) || static_cast<int>(index_of(e, parts).size()) != b.k)
            throw invalid_query("all edges must be transversal to the parts");
    const auto pv = parts.parts();
    const std::uint64_t n1 = pv[0].size();
    if (p < 1 || n1 % static_cast<std::uint64_t>(p) != 0)
        throw invalid_query("factor must divide the first part's size");

    bigint denom = 1;
    for (const auto& part : pv) denom *= bigint(part.size());
    SubsampleReport rep;
    rep.base_density = rational(bigint(b.edge_count()), denom);
    rep.trials = trials;

    const std::uint64_t keep = n1 / static_cast<std::uint64_t>(p);
    bigint denom2 = denom / bigint(n1) * bigint(keep);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, {0x5AB5ull, trial}));
        std::vector<int> pick = rng.subset(static_cast<int>(n1), static_cast<int>(keep));
        std::vector<bool> kept(b.n, false);
        for (int idx : pick) kept[pv[0][static_cast<std::size_t>(idx)]] = true;
        std::uint64_t edges = 0;
        for (const Edge& e : b.edges) {
            bool ok = true;
            for (int v : e)
                if (parts.part_of[v] == 0 && !kept[v]) { ok = false; break; }
            if (ok) ++edges;
        }
        const rational d2(bigint(edges), denom2);
        if (rational_abs(d2 - rep.base_density) <= delta) ++rep.within;
    }
    rep.empirical = trials ? static_cast<double>(rep.within) / static_cast<double>(trials) : 1.0;
    const double dd = to_double(delta);
    rep.analytic_lower_bound =
        1.0 - (4.0 / dd) * std::exp(-std::pow(dd, 4) * static_cast<double>(n1) /
                                    (32.0 * static_cast<double>(p) * static_cast<double>(p)));
    return rep;
}

}  // namespace hyperslice
