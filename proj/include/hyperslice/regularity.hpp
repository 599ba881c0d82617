// regularity.hpp - relative densities, regularity checks, reduced graphs,
// sub-hypergraph densities, and entropy
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "family.hpp"
#include "rng.hpp"

namespace hyperslice {

// ---------------------------------------------------------------------------
// Cliques over a base graph.
//
// For an (i-1)-uniform base, K_i(base) is the family of i-sets all of whose
// (i-1)-subsets are base edges.  With a ground partition given, only partite
// i-sets count.  Everything below sits on top of this enumeration.

inline std::vector<Edge> cliques_over(const KGraph& base, const GroundPartition* partite,
                                      Capacity cap = {}) {
    const int i = base.k + 1;
    const bigint total = binomial(base.n, i);
    if (total > bigint(cap.max_sets))
        throw capacity_exceeded("clique enumeration would visit " + total.str() + " sets");
    std::vector<Edge> out;
    for_each_subset(base.n, i, [&](const Edge& s) {
        if (partite && !is_partite_set(s, *partite)) return;
        for (int drop = 0; drop < i; ++drop) {
            Edge sub = s;
            sub.erase(sub.begin() + drop);
            if (!base.has_edge(sub)) return;
        }
        out.push_back(s);
    });
    return out;
}

// Density of h relative to the base: |edges of h inside K_i(base)| over
// |K_i(base)|; zero by convention when the base supports no cliques.
inline rational relative_density(const KGraph& h, const KGraph& base,
                                 const GroundPartition* partite = nullptr, Capacity cap = {}) {
    if (h.k != base.k + 1) throw invalid_query("uniformities must differ by one");
    std::vector<Edge> cl = cliques_over(base, partite, cap);
    if (cl.empty()) return rational(0);
    std::uint64_t hit = 0;
    for (const Edge& s : cl)
        if (h.has_edge(s)) ++hit;
    return rational(hit, cl.size());
}

// ---------------------------------------------------------------------------
// Regularity falsification.
//
// h is (d, eps, r)-regular over the base when every r-tuple of base
// subgraphs whose joint clique count exceeds eps * |K(base)| has relative
// density within eps of d.  The checker searches for a violating tuple:
//
//   Falsified          a qualifying tuple with |density - d| > eps
//   ExactlyRegular     exhaustive sweep found none
//   NotFalsified       sampling found none (not a certificate)

enum class RegularityStatus { Falsified, ExactlyRegular, NotFalsified };

struct RegularityWitness {
    std::vector<std::vector<std::size_t>> parts;  // r lists of base-edge indices
    std::uint64_t cliques = 0;
    rational density;
};

struct RegularityVerdict {
    RegularityStatus status = RegularityStatus::NotFalsified;
    std::optional<RegularityWitness> witness;
    std::uint64_t inspected = 0;
};

struct RegularityParams {
    rational d;
    rational eps;
    int r = 1;
};

namespace detail {

// Bitset over clique indices, chunked in 64-bit words.
struct CliqueSet {
    std::vector<std::uint64_t> words;
    explicit CliqueSet(std::size_t bits) : words((bits + 63) / 64, 0) {}
    void set(std::size_t b) { words[b / 64] |= std::uint64_t(1) << (b % 64); }
    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : words) c += __builtin_popcountll(w);
        return c;
    }
};

struct FalsifyCtx {
    const KGraph& h;
    const KGraph& base;
    const std::vector<Edge>& cliques;
    std::vector<bool> in_h;             // clique index -> edge of h
    std::vector<std::vector<int>> need;  // clique index -> base edge indices it uses

    FalsifyCtx(const KGraph& h_, const KGraph& base_, const std::vector<Edge>& cl)
        : h(h_), base(base_), cliques(cl) {
        in_h.resize(cl.size());
        need.resize(cl.size());
        for (std::size_t c = 0; c < cl.size(); ++c) {
            in_h[c] = h.has_edge(cl[c]);
            const Edge& s = cl[c];
            for (int drop = 0; drop < static_cast<int>(s.size()); ++drop) {
                Edge sub = s;
                sub.erase(sub.begin() + drop);
                auto it = std::lower_bound(base.edges.begin(), base.edges.end(), sub);
                need[c].push_back(static_cast<int>(it - base.edges.begin()));
            }
        }
    }

    // Cliques whose required base edges all lie in the subgraph mask.
    CliqueSet cliques_of_mask(std::uint64_t mask) const {
        CliqueSet out(cliques.size());
        for (std::size_t c = 0; c < cliques.size(); ++c) {
            bool ok = true;
            for (int e : need[c])
                if (!(mask >> e & 1)) { ok = false; break; }
            if (ok) out.set(c);
        }
        return out;
    }

    std::uint64_t hits(const CliqueSet& s) const {
        std::uint64_t out = 0;
        for (std::size_t c = 0; c < cliques.size(); ++c)
            if (in_h[c] && (s.words[c / 64] >> (c % 64) & 1)) ++out;
        return out;
    }
};

}  // namespace detail

// Exhaustive sweep over all r-multisets of base subgraphs.  Requires
// e(base) <= max_base_edges (default 20) and the tuple count within the
// capacity guard; throws capacity_exceeded otherwise.
inline RegularityVerdict regularity_sweep(const KGraph& h, const KGraph& base,
                                          const RegularityParams& prm,
                                          const GroundPartition* partite = nullptr,
                                          int max_base_edges = 20, Capacity cap = {}) {
    if (h.k != base.k + 1) throw invalid_query("uniformities must differ by one");
    if (prm.r < 1) throw invalid_query("tuple arity must be positive");
    const int m = static_cast<int>(base.edge_count());
    if (m > max_base_edges)
        throw capacity_exceeded("base has " + std::to_string(m) + " edges; the exhaustive sweep cap is " +
                                std::to_string(max_base_edges));
    std::vector<Edge> cl = cliques_over(base, partite, cap);
    const std::uint64_t subgraphs = std::uint64_t(1) << m;
    // Multisets of size r over 2^m subgraphs: C(2^m + r - 1, r).
    bigint tuples = 1;
    for (int i = 0; i < prm.r; ++i) tuples *= bigint(subgraphs + static_cast<std::uint64_t>(i));
    tuples /= factorial(static_cast<std::uint64_t>(prm.r));
    if (tuples > bigint(cap.max_sets))
        throw capacity_exceeded("sweep would inspect " + tuples.str() + " tuples");

    detail::FalsifyCtx ctx(h, base, cl);
    const std::uint64_t total = cl.size();
    RegularityVerdict out;

    // Precompute per-subgraph clique sets once.
    std::vector<detail::CliqueSet> sets;
    sets.reserve(subgraphs);
    for (std::uint64_t mask = 0; mask < subgraphs; ++mask)
        sets.push_back(ctx.cliques_of_mask(mask));

    std::vector<std::uint64_t> tuple(prm.r, 0);
    auto evaluate = [&]() -> bool {
        ++out.inspected;
        detail::CliqueSet un(total);
        for (std::uint64_t mask : tuple)
            for (std::size_t w = 0; w < un.words.size(); ++w)
                un.words[w] |= sets[mask].words[w];
        const std::uint64_t cnt = un.count();
        // Strict qualification: |K(tuple)| > eps * |K(base)|.
        if (rational(cnt) <= prm.eps * rational(total)) return false;
        const std::uint64_t hit = ctx.hits(un);
        const rational dens(hit, cnt);
        if (rational_abs(dens - prm.d) <= prm.eps) return false;
        RegularityWitness w;
        for (std::uint64_t mask : tuple) {
            std::vector<std::size_t> part;
            for (int e = 0; e < m; ++e)
                if (mask >> e & 1) part.push_back(static_cast<std::size_t>(e));
            w.parts.push_back(std::move(part));
        }
        w.cliques = cnt;
        w.density = dens;
        out.witness = std::move(w);
        return true;
    };

    // Nondecreasing tuples of subgraph masks (multisets).
    while (true) {
        if (evaluate()) {
            out.status = RegularityStatus::Falsified;
            return out;
        }
        int pos = prm.r - 1;
        while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == subgraphs - 1) --pos;
        if (pos < 0) break;
        const std::uint64_t v = tuple[static_cast<std::size_t>(pos)] + 1;
        for (int q = pos; q < prm.r; ++q) tuple[static_cast<std::size_t>(q)] = v;
    }
    out.status = RegularityStatus::ExactlyRegular;
    return out;
}

// Randomized search: each trial draws r subgraphs from a mixed pool
// (vertex-induced, edge-subset, and link-through-a-vertex subgraphs).
inline RegularityVerdict regularity_sample(const KGraph& h, const KGraph& base,
                                           const RegularityParams& prm, std::uint64_t trials,
                                           std::uint64_t seed,
                                           const GroundPartition* partite = nullptr,
                                           Capacity cap = {}) {
    if (h.k != base.k + 1) throw invalid_query("uniformities must differ by one");
    if (prm.r < 1) throw invalid_query("tuple arity must be positive");
    std::vector<Edge> cl = cliques_over(base, partite, cap);
    detail::FalsifyCtx ctx(h, base, cl);
    const std::uint64_t total = cl.size();
    const int m = static_cast<int>(base.edge_count());
    RegularityVerdict out;
    if (m > 63) throw capacity_exceeded("sampling supports at most 63 base edges");

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, {0xFA15ull, trial}));
        std::vector<std::uint64_t> tuple;
        for (int part = 0; part < prm.r; ++part) {
            const std::uint64_t kind = rng.below(3);
            std::uint64_t mask = 0;
            if (kind == 0) {
                // Induced on a random vertex subset.
                std::vector<bool> keep(base.n);
                for (int v = 0; v < base.n; ++v) keep[v] = rng.bernoulli(1, 2);
                for (int e = 0; e < m; ++e) {
                    bool all = true;
                    for (int v : base.edges[static_cast<std::size_t>(e)])
                        if (!keep[v]) { all = false; break; }
                    if (all) mask |= std::uint64_t(1) << e;
                }
            } else if (kind == 1) {
                // Uniform edge subset.
                for (int e = 0; e < m; ++e)
                    if (rng.bernoulli(1, 2)) mask |= std::uint64_t(1) << e;
            } else {
                // Edges through a random vertex.
                const int v = base.n ? static_cast<int>(rng.below(static_cast<std::uint64_t>(base.n))) : 0;
                for (int e = 0; e < m; ++e)
                    if (contains_vertex(base.edges[static_cast<std::size_t>(e)], v))
                        mask |= std::uint64_t(1) << e;
            }
            tuple.push_back(mask);
        }
        ++out.inspected;
        detail::CliqueSet un(total);
        for (std::uint64_t mask : tuple) {
            detail::CliqueSet s = ctx.cliques_of_mask(mask);
            for (std::size_t w = 0; w < un.words.size(); ++w) un.words[w] |= s.words[w];
        }
        const std::uint64_t cnt = un.count();
        if (rational(cnt) <= prm.eps * rational(total)) continue;
        const std::uint64_t hit = ctx.hits(un);
        const rational dens(hit, cnt);
        if (rational_abs(dens - prm.d) <= prm.eps) continue;
        RegularityWitness w;
        for (std::uint64_t mask : tuple) {
            std::vector<std::size_t> part;
            for (int e = 0; e < m; ++e)
                if (mask >> e & 1) part.push_back(static_cast<std::size_t>(e));
            w.parts.push_back(std::move(part));
        }
        w.cliques = cnt;
        w.density = dens;
        out.witness = std::move(w);
        out.status = RegularityStatus::Falsified;
        return out;
    }
    out.status = RegularityStatus::NotFalsified;
    return out;
}

// Mode selector for the falsifier: either the exhaustive sweep (certifies
// ExactlyRegular) or seeded sampling (NotFalsified is not a certificate).
struct FalsifyMode {
    bool exhaustive = true;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    static FalsifyMode Exhaustive() { return FalsifyMode{true, 0, 0}; }
    static FalsifyMode Sampled(std::uint64_t trials, std::uint64_t seed) {
        return FalsifyMode{false, trials, seed};
    }
};

inline RegularityVerdict regularity_falsify(const KGraph& h, const KGraph& base,
                                            const RegularityParams& prm, const FalsifyMode& mode,
                                            const GroundPartition* partite = nullptr,
                                            int max_base_edges = 20, Capacity cap = {}) {
    if (mode.exhaustive)
        return regularity_sweep(h, base, prm, partite, max_base_edges, cap);
    return regularity_sample(h, base, prm, mode.trials, mode.seed, partite, cap);
}

// ---------------------------------------------------------------------------
// Weighted reduced graphs over a slice.
//
// For every k-set X of clusters, the weight is the density of G relative to
// the polyad of X: the (k-1)-graph of slice sets lying strictly below X.

struct WeightedReducedGraph {
    int t = 0;  // vertices are clusters
    int k = 2;
    std::map<Edge, rational> weight;  // cluster k-set -> relative density

    rational weight_of(const Edge& x) const {
        auto it = weight.find(x);
        if (it == weight.end()) throw invalid_query("cluster set out of range");
        return it->second;
    }
};

// The polyad of a cluster k-set X: slice (k-1)-sets whose clusters sit
// inside X.  Returned as a (k-1)-graph on the ground vertices.
inline KGraph polyad_graph(const Complex& slice, const GroundPartition& ground, const Edge& x) {
    std::vector<Edge> edges;
    for (const Edge& s : slice.levels[slice.k])
        if (is_subset(index_of(s, ground), x)) edges.push_back(s);
    return KGraph{slice.k, slice.n, std::move(edges)};
}

inline WeightedReducedGraph weighted_reduced(const KGraph& g, const PartitionFamily& f,
                                             const Slice& s, Capacity cap = {}) {
    if (g.n != f.ground.n()) throw invalid_query("host and family differ on the vertex set");
    if (g.k != f.k) throw invalid_query("host uniformity differs from the family's");
    Complex sc = slice_complex(f, s, cap);
    WeightedReducedGraph out;
    out.t = f.t();
    out.k = f.k;
    for_each_subset(f.t(), f.k, [&](const Edge& x) {
        KGraph base = polyad_graph(sc, f.ground, x);
        out.weight[x] = relative_density(g, base, &f.ground, cap);
    });
    return out;
}

// Unweighted restriction: cluster sets whose weight reaches d and whose
// polyad-relative slice is not falsified at (eps, r).  The sweep is used
// when the polyad is small enough, sampling otherwise; irregular cluster
// sets (falsified ones) are reported alongside.

struct ReducedGraph {
    KGraph graph;                  // k-graph on clusters
    std::vector<Edge> irregular;   // cluster sets with a falsified polyad
    std::map<Edge, rational> weight;
    // Verification budget actually spent, kept for provenance.
    std::uint64_t swept = 0;          // cluster sets judged exhaustively
    std::uint64_t sampled = 0;        // cluster sets judged by sampling
    std::uint64_t sample_trials = 0;  // trials per sampled set
    rational eps;
    int r = 1;
};

inline ReducedGraph d_reduced(const KGraph& g, const PartitionFamily& f, const Slice& s,
                              const rational& d, const rational& eps, int r,
                              std::uint64_t sample_trials, std::uint64_t seed,
                              int sweep_max_base_edges = 20, Capacity cap = {}) {
    Complex sc = slice_complex(f, s, cap);
    ReducedGraph out;
    out.sample_trials = sample_trials;
    out.eps = eps;
    out.r = r;
    std::vector<Edge> ok;
    std::uint64_t xi = 0;
    for_each_subset(f.t(), f.k, [&](const Edge& x) {
        KGraph base = polyad_graph(sc, f.ground, x);
        const rational w = relative_density(g, base, &f.ground, cap);
        out.weight[x] = w;
        RegularityParams prm{w, eps, r};
        RegularityVerdict v;
        if (base.edge_count() <= static_cast<std::uint64_t>(sweep_max_base_edges) && r == 1) {
            v = regularity_sweep(g, base, prm, &f.ground, sweep_max_base_edges, cap);
            ++out.swept;
        } else {
            v = regularity_sample(g, base, prm, sample_trials, derive_seed(seed, xi), &f.ground,
                                  cap);
            ++out.sampled;
        }
        ++xi;
        if (v.status == RegularityStatus::Falsified)
            out.irregular.push_back(x);
        else if (w >= d)
            ok.push_back(x);
    });
    out.graph = make_kgraph(f.k, f.t(), std::move(ok));
    return out;
}

// ---------------------------------------------------------------------------
// Sub-hypergraph densities.
//
// n_H(G) counts labelled embeddings: injections of V(H) into V(G) mapping
// every edge of H onto an edge of G.  In a weighted host each embedding
// contributes the product of the image edges' weights.  d_H normalizes by
// all injections: C(n, v(H)) * v(H)!.

namespace detail {

template <class WeightFn>
rational embedding_weight_sum(int host_n, int pattern_n, const std::vector<Edge>& pattern_edges,
                              const std::vector<std::pair<int, int>>& pins, WeightFn&& wf) {
    std::vector<int> img(static_cast<std::size_t>(pattern_n), -1);
    std::vector<bool> used(static_cast<std::size_t>(host_n), false);
    for (auto [pv, gv] : pins) {
        if (pv < 0 || pv >= pattern_n || gv < 0 || gv >= host_n)
            throw invalid_query("root out of range");
        if (img[static_cast<std::size_t>(pv)] >= 0 || used[static_cast<std::size_t>(gv)])
            throw invalid_query("roots must pin distinct vertices to distinct images");
        img[static_cast<std::size_t>(pv)] = gv;
        used[static_cast<std::size_t>(gv)] = true;
    }
    rational total = 0;
    // Recurse over pattern vertices in id order; at a full placement the
    // embedding contributes the product of its image edges' weights.
    auto rec = [&](auto&& self, int pv) -> void {
        while (pv < pattern_n && img[static_cast<std::size_t>(pv)] >= 0) ++pv;
        if (pv == pattern_n) {
            rational w = 1;
            for (const Edge& e : pattern_edges) {
                Edge im;
                for (int x : e) im.push_back(img[static_cast<std::size_t>(x)]);
                std::sort(im.begin(), im.end());
                rational ew = wf(im);
                if (ew == 0) return;
                w *= ew;
            }
            total += w;
            return;
        }
        for (int gv = 0; gv < host_n; ++gv) {
            if (used[static_cast<std::size_t>(gv)]) continue;
            img[static_cast<std::size_t>(pv)] = gv;
            used[static_cast<std::size_t>(gv)] = true;
            self(self, pv + 1);
            used[static_cast<std::size_t>(gv)] = false;
            img[static_cast<std::size_t>(pv)] = -1;
        }
    };
    rec(rec, 0);
    return total;
}

}  // namespace detail

// Weighted embedding count of the k-graph `pattern` in a weighted host given
// by (host_n, weight function over sorted k-sets).
template <class WeightFn>
rational count_embeddings_weighted(int host_n, const KGraph& pattern, WeightFn&& wf,
                                   const std::vector<std::pair<int, int>>& pins = {}) {
    if (pattern.n > host_n) return rational(0);
    return detail::embedding_weight_sum(host_n, pattern.n, pattern.edges, pins,
                                        std::forward<WeightFn>(wf));
}

inline rational count_embeddings(const KGraph& host, const KGraph& pattern,
                                 const std::vector<std::pair<int, int>>& pins = {}) {
    if (host.k != pattern.k) throw invalid_query("uniformities must match");
    return count_embeddings_weighted(
        host.n, pattern,
        [&](const Edge& e) { return host.has_edge(e) ? rational(1) : rational(0); }, pins);
}

// d_H(G) = n_H(G) / (C(n, v(H)) v(H)!), in the unweighted and weighted hosts.
inline rational h_density(const KGraph& host, const KGraph& pattern) {
    const bigint denom = binomial(host.n, pattern.n) * factorial(static_cast<std::uint64_t>(pattern.n));
    if (denom == 0) throw invalid_query("pattern larger than the host");
    return count_embeddings(host, pattern) / rational(denom);
}

inline rational h_density(const WeightedReducedGraph& host, const KGraph& pattern) {
    if (host.k != pattern.k) throw invalid_query("uniformities must match");
    const bigint denom = binomial(host.t, pattern.n) * factorial(static_cast<std::uint64_t>(pattern.n));
    if (denom == 0) throw invalid_query("pattern larger than the host");
    rational cnt = count_embeddings_weighted(host.t, pattern, [&](const Edge& e) {
        auto it = host.weight.find(e);
        return it == host.weight.end() ? rational(0) : it->second;
    });
    return cnt / rational(denom);
}

// Restriction of a weighted reduced graph to a cluster subset.
inline WeightedReducedGraph restrict_reduced(const WeightedReducedGraph& host, const Edge& xs) {
    WeightedReducedGraph out;
    out.t = static_cast<int>(xs.size());
    out.k = host.k;
    for_each_subset_of(xs, host.k, [&](const Edge& e) {
        auto it = host.weight.find(e);
        if (it != host.weight.end()) {
            Edge local;
            for (int v : e)
                local.push_back(static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()));
            out.weight[local] = it->second;
        }
    });
    return out;
}

inline KGraph induced_subgraph(const KGraph& g, const Edge& xs) {
    std::vector<Edge> edges;
    for (const Edge& e : g.edges) {
        if (!is_subset(e, xs)) continue;
        Edge local;
        for (int v : e)
            local.push_back(static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()));
        edges.push_back(local);
    }
    return KGraph{g.k, static_cast<int>(xs.size()), std::move(edges)};
}

// ---------------------------------------------------------------------------
// Relative degrees.
//
// For a j-set S and a target set X disjoint from the rest of S's extensions,
// deg(S; G, X) = |{edges e of G[S u X] with S inside e}| / C(|X \ S|, k-j).
// The weighted variant sums edge weights; the collection variant averages
// over several S.

inline rational rel_degree(const Edge& s, const KGraph& g, const Edge& x) {
    if (!is_sorted_unique(s) || !is_sorted_unique(x))
        throw invalid_query("degree arguments must be sorted and distinct");
    const int j = static_cast<int>(s.size());
    if (j > g.k) throw invalid_query("set larger than the uniformity");
    const Edge xs = edge_minus(x, s);
    const bigint denom = binomial(xs.size(), static_cast<std::uint64_t>(g.k - j));
    if (denom == 0) throw invalid_query("target set too small for extensions");
    std::uint64_t cnt = 0;
    for_each_subset_of(xs, g.k - j, [&](const Edge& add) {
        if (g.has_edge(edge_union(s, add))) ++cnt;
    });
    return rational(cnt) / rational(denom);
}

inline rational rel_degree(const Edge& s, const WeightedReducedGraph& g, const Edge& x) {
    const int j = static_cast<int>(s.size());
    if (j > g.k) throw invalid_query("set larger than the uniformity");
    const Edge xs = edge_minus(x, s);
    const bigint denom = binomial(xs.size(), static_cast<std::uint64_t>(g.k - j));
    if (denom == 0) throw invalid_query("target set too small for extensions");
    rational sum = 0;
    for_each_subset_of(xs, g.k - j, [&](const Edge& add) {
        auto it = g.weight.find(edge_union(s, add));
        if (it != g.weight.end()) sum += it->second;
    });
    return sum / rational(denom);
}

template <class Host>
rational rel_degree_mean(const std::vector<Edge>& ss, const Host& g, const Edge& x) {
    if (ss.empty()) throw invalid_query("collection must be nonempty");
    rational sum = 0;
    for (const Edge& s : ss) sum += rel_degree(s, g, x);
    return sum / rational(static_cast<std::uint64_t>(ss.size()));
}

// Proportion of the k-sets z with y inside z inside y u x that appear in the
// irregular list.  This is the correction term in degree comparisons between
// the weighted reduced graph and its thresholded restriction.
inline rational irregular_proportion(const Edge& y, const Edge& x, int k,
                                     const std::vector<Edge>& irregular) {
    const Edge xs = edge_minus(x, y);
    const int j = static_cast<int>(y.size());
    const bigint denom = binomial(xs.size(), static_cast<std::uint64_t>(k - j));
    if (denom == 0) throw invalid_query("target set too small for extensions");
    std::uint64_t cnt = 0;
    for_each_subset_of(xs, k - j, [&](const Edge& add) {
        Edge z = edge_union(y, add);
        for (const Edge& w : irregular)
            if (w == z) { ++cnt; break; }
    });
    return rational(cnt) / rational(denom);
}

// ---------------------------------------------------------------------------
// Rooted pattern densities.
//
// Roots pin pattern vertices to host vertices.  The plain version normalizes
// by C(n - l, v(H) - l) (v(H) - l)! where l is the number of roots.  The
// slice-supported version restricts the non-root image: distinct clusters,
// with the pattern's shadow (all proper subsets of its edges minus the
// roots) landing inside a slice complex; it normalizes by the number of
// embeddings of that shadow alone.

inline rational rooted_density(const KGraph& host, const KGraph& pattern,
                               const std::vector<std::pair<int, int>>& roots) {
    const int l = static_cast<int>(roots.size());
    const bigint denom = binomial(host.n - l, static_cast<std::uint64_t>(pattern.n - l)) *
                         factorial(static_cast<std::uint64_t>(pattern.n - l));
    if (denom == 0) throw invalid_query("no room for the non-root vertices");
    return count_embeddings(host, pattern, roots) / rational(denom);
}

// Shadow of a pattern for slice-supported counting: the down-closure of its
// edges restricted to levels 1..k-1, with root vertices removed.
inline Complex pattern_shadow(const KGraph& pattern, const std::vector<int>& root_vertices) {
    Complex full = down_closure(pattern);
    Complex out = empty_complex(pattern.k - 1, pattern.n);
    Edge roots = sorted_copy(Edge(root_vertices.begin(), root_vertices.end()));
    for (int lvl = 0; lvl <= pattern.k - 1; ++lvl)
        for (const Edge& e : full.levels[static_cast<std::size_t>(lvl)])
            if (intersection_size(e, roots) == 0) out.levels[static_cast<std::size_t>(lvl)].push_back(e);
    return out;
}

struct SliceRootedCounts {
    rational embeddings;        // pattern embeddings with shadow in the slice
    rational shadow_embeddings; // shadow embeddings alone
    rational density;
};

inline SliceRootedCounts slice_rooted_density(const KGraph& host, const PartitionFamily& f,
                                              const Slice& s, const KGraph& pattern,
                                              const std::vector<std::pair<int, int>>& roots,
                                              Capacity cap = {}) {
    if (host.n != f.ground.n()) throw invalid_query("host and family differ on the vertex set");
    Complex sc = slice_complex(f, s, cap);
    std::vector<int> root_pv;
    for (auto [pv, gv] : roots) root_pv.push_back(pv);
    Complex shadow = pattern_shadow(pattern, root_pv);

    // Non-root vertices must land in pairwise distinct clusters and every
    // shadow set's image must lie in the slice complex.
    Edge roots_sorted = sorted_copy(Edge(root_pv.begin(), root_pv.end()));
    auto admissible = [&](const std::vector<int>& img) {
        Edge nonroot_img;
        for (int pv = 0; pv < pattern.n; ++pv)
            if (!contains_vertex(roots_sorted, pv)) nonroot_img.push_back(img[static_cast<std::size_t>(pv)]);
        std::sort(nonroot_img.begin(), nonroot_img.end());
        if (!is_partite_set(nonroot_img, f.ground)) return false;
        for (int lvl = 1; lvl <= shadow.k; ++lvl)
            for (const Edge& e : shadow.levels[static_cast<std::size_t>(lvl)]) {
                Edge im;
                for (int x : e) im.push_back(img[static_cast<std::size_t>(x)]);
                std::sort(im.begin(), im.end());
                if (!sc.has(im)) return false;
            }
        return true;
    };

    // Count pattern embeddings and shadow embeddings by brute force over
    // injections, sharing the admissibility filter.
    rational emb = 0, semb = 0;
    std::vector<int> img(static_cast<std::size_t>(pattern.n), -1);
    std::vector<bool> used(static_cast<std::size_t>(host.n), false);
    for (auto [pv, gv] : roots) {
        if (img[static_cast<std::size_t>(pv)] >= 0 || used[static_cast<std::size_t>(gv)])
            throw invalid_query("roots must pin distinct vertices to distinct images");
        img[static_cast<std::size_t>(pv)] = gv;
        used[static_cast<std::size_t>(gv)] = true;
    }
    auto rec = [&](auto&& self, int pv) -> void {
        while (pv < pattern.n && img[static_cast<std::size_t>(pv)] >= 0) ++pv;
        if (pv == pattern.n) {
            if (!admissible(img)) return;
            semb += 1;
            for (const Edge& e : pattern.edges) {
                Edge im;
                for (int x : e) im.push_back(img[static_cast<std::size_t>(x)]);
                std::sort(im.begin(), im.end());
                if (!host.has_edge(im)) return;
            }
            emb += 1;
            return;
        }
        for (int gv = 0; gv < host.n; ++gv) {
            if (used[static_cast<std::size_t>(gv)]) continue;
            img[static_cast<std::size_t>(pv)] = gv;
            used[static_cast<std::size_t>(gv)] = true;
            self(self, pv + 1);
            used[static_cast<std::size_t>(gv)] = false;
            img[static_cast<std::size_t>(pv)] = -1;
        }
    };
    rec(rec, 0);

    if (semb == 0)
        throw invalid_query("the slice supports no embedding of the pattern's shadow");
    return SliceRootedCounts{emb, semb, emb / semb};
}

// Slice-supported rooted density as a plain rational.
inline rational rooted_density(const KGraph& host, const KGraph& pattern,
                               const std::vector<std::pair<int, int>>& roots,
                               const PartitionFamily& f, const Slice& s, Capacity cap = {}) {
    return slice_rooted_density(host, f, s, pattern, roots, cap).density;
}

// ---------------------------------------------------------------------------
// Entropy of a weighted reduced graph: the mean of the binary entropies of
// the edge weights over all cluster k-sets.  This is the one quantity the
// library reports in floating point.

inline double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

inline double reduced_entropy(const WeightedReducedGraph& g) {
    const std::uint64_t total = binomial_u64(g.t, g.k);
    if (total == 0) throw invalid_query("no cluster sets to average over");
    double sum = 0.0;
    for (const auto& [x, w] : g.weight) sum += binary_entropy(to_double(w));
    return sum / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Slice quality report.
//
// Gathers, for one host graph, family, slice, and cluster set X:
//   - per-pattern densities on the weighted reduced graph against the host,
//     with the thresholded-graph lower bound (a theorem, hard-asserted);
//   - per-cluster-set relative degrees on both sides, with the thresholded
//     lower bound (also asserted), the correction being the irregular
//     proportion in range;
//   - rooted densities, plain against slice-supported;
//   - polyad clique counts against the m^k reference, as deviations;
//   - the overall fraction of irregular cluster sets.
// The density and degree comparisons are measurements; only the two
// lower-bound inequalities are exact statements and failures throw.

struct RootQuery {
    KGraph pattern;
    std::vector<std::pair<int, int>> roots;  // pattern vertex -> host vertex
};

struct SliceQualityReport {
    ReducedGraph reduced;       // weights, irregular sets, provenance
    rational irregular_fraction;

    struct PatternRow {
        rational weighted;      // d_H over the weighted reduced graph on X
        rational host;          // d_H over the host induced on the X clusters
        rational discrepancy;   // |weighted - host|
        rational thresholded;   // d_H over the d-reduced graph on X
        rational slack;         // thresholded - weighted + d + correction
    };
    std::vector<PatternRow> patterns;

    struct DegreeRow {
        Edge y;
        rational weighted;      // rel_degree(y) in the weighted reduced graph
        bool host_defined = false;
        rational host;          // mean rel_degree over slice sets patterned y
        rational discrepancy;
        rational thresholded;   // rel_degree(y) in the d-reduced graph
        rational zeta;          // irregular proportion between y and x
        rational slack;         // thresholded - weighted + d + zeta
    };
    std::vector<DegreeRow> degrees;

    struct RootRow {
        rational plain;
        rational sliced;
        rational discrepancy;
    };
    std::vector<RootRow> roots;

    struct CountRow {
        Edge clusters;          // the k-set of clusters
        std::uint64_t cliques;  // k-sets supported on its polyad
        rational deviation;     // cliques / m^k - 1
    };
    std::vector<CountRow> counting;
    rational max_counting_deviation;
};

inline SliceQualityReport slice_quality_report(
    const KGraph& g, const PartitionFamily& f, const Slice& s, const std::vector<KGraph>& h_list,
    const Edge& x, const std::vector<RootQuery>& root_queries, const rational& d,
    const rational& eps, int r, std::uint64_t sample_trials, std::uint64_t seed,
    int sweep_max_base_edges = 20, Capacity cap = {}) {
    const int k = f.k;
    const int t = f.t();
    if (!is_sorted_unique(x) || x.empty() || x.front() < 0 || x.back() >= t)
        throw invalid_query("cluster set out of range");
    if (static_cast<int>(x.size()) < k)
        throw invalid_query("cluster set smaller than the uniformity");

    SliceQualityReport out;
    out.reduced = d_reduced(g, f, s, d, eps, r, sample_trials, seed, sweep_max_base_edges, cap);
    const bigint all_sets = binomial(t, k);
    out.irregular_fraction = rational(bigint(out.reduced.irregular.size())) / rational(all_sets);

    WeightedReducedGraph rw;
    rw.t = t;
    rw.k = k;
    rw.weight = out.reduced.weight;

    // Host vertices living in the chosen clusters, for induced comparisons.
    Edge ux;
    auto parts = f.ground.parts();
    for (int c : x) ux.insert(ux.end(), parts[static_cast<std::size_t>(c)].begin(),
                              parts[static_cast<std::size_t>(c)].end());
    std::sort(ux.begin(), ux.end());

    const WeightedReducedGraph rwx = restrict_reduced(rw, x);
    const KGraph rdx = induced_subgraph(out.reduced.graph, x);
    const KGraph gx = induced_subgraph(g, ux);
    const bigint xk = binomial(x.size(), static_cast<std::uint64_t>(k));

    for (const KGraph& h : h_list) {
        if (h.k != k) throw invalid_query("pattern uniformity differs from the host's");
        if (h.n > static_cast<int>(x.size()))
            throw invalid_query("pattern larger than the cluster set");
        SliceQualityReport::PatternRow row;
        row.weighted = h_density(rwx, h);
        row.host = h_density(gx, h);
        row.discrepancy = rational_abs(row.weighted - row.host);
        row.thresholded = h_density(rdx, h);
        const rational correction =
            rational(bigint(h.edge_count()) * bigint(out.reduced.irregular.size())) / rational(xk);
        row.slack = row.thresholded - row.weighted + d + correction;
        if (row.slack < 0)
            throw error("thresholded pattern density fell below its guaranteed bound");
        out.patterns.push_back(std::move(row));
    }

    Complex sc = slice_complex(f, s, cap);
    for (int j = 1; j <= k - 1; ++j) {
        for_each_subset_of(x, j, [&](const Edge& y) {
            SliceQualityReport::DegreeRow row;
            row.y = y;
            row.weighted = rel_degree(y, rw, x);
            row.thresholded = rel_degree(y, out.reduced.graph, x);
            row.zeta = irregular_proportion(y, x, k, out.reduced.irregular);
            row.slack = row.thresholded - row.weighted + d + row.zeta;
            if (row.slack < 0)
                throw error("thresholded relative degree fell below its guaranteed bound");
            std::vector<Edge> members;
            for (const Edge& e : sc.levels[static_cast<std::size_t>(j)])
                if (index_of(e, f.ground) == y) members.push_back(e);
            if (!members.empty()) {
                row.host_defined = true;
                row.host = rel_degree_mean(members, g, ux);
                row.discrepancy = rational_abs(row.weighted - row.host);
            }
            out.degrees.push_back(std::move(row));
        });
    }

    for (const RootQuery& q : root_queries) {
        SliceQualityReport::RootRow row;
        row.plain = rooted_density(g, q.pattern, q.roots);
        row.sliced = rooted_density(g, q.pattern, q.roots, f, s, cap);
        row.discrepancy = rational_abs(row.plain - row.sliced);
        out.roots.push_back(std::move(row));
    }

    const int m = f.ground.n() / t;
    bigint mk = 1;
    for (int i = 0; i < k; ++i) mk *= m;
    out.max_counting_deviation = 0;
    for_each_subset_of(x, k, [&](const Edge& xp) {
        KGraph base = polyad_graph(sc, f.ground, xp);
        const std::uint64_t cnt =
            static_cast<std::uint64_t>(cliques_over(base, &f.ground, cap).size());
        SliceQualityReport::CountRow row;
        row.clusters = xp;
        row.cliques = cnt;
        row.deviation = rational(cnt) / rational(mk) - 1;
        if (rational_abs(row.deviation) > out.max_counting_deviation)
            out.max_counting_deviation = rational_abs(row.deviation);
        out.counting.push_back(std::move(row));
    });

    return out;
}

}  // namespace hyperslice
