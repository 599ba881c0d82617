// generators.hpp - deterministic construction of standard k-graph families
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "matching.hpp"
#include "rng.hpp"

namespace hyperslice {

// Complete k-graph on n vertices.
inline KGraph complete_kgraph(int n, int k) {
    if (k < 1 || n < 0) throw invalid_query("bad parameters for the complete graph");
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const Edge& e) { edges.push_back(e); });
    return make_kgraph(k, n, std::move(edges));
}

// Complete multipartite k-graph: classes of the given sizes laid out
// consecutively, edges the k-sets touching k distinct classes.
struct PartiteGraph {
    KGraph graph;
    GroundPartition parts;
};

inline PartiteGraph complete_partite(const std::vector<int>& sizes, int k) {
    if (static_cast<int>(sizes.size()) < k)
        throw invalid_query("need at least k classes");
    for (int s : sizes)
        if (s < 1) throw invalid_query("class sizes must be positive");
    const int t = static_cast<int>(sizes.size());
    std::vector<int> part_of;
    for (int c = 0; c < t; ++c)
        part_of.insert(part_of.end(), static_cast<std::size_t>(sizes[c]), c);
    GroundPartition p = make_partition(t, std::move(part_of));
    const int n = p.n();
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const Edge& e) {
        if (is_partite_set(e, p)) edges.push_back(e);
    });
    return PartiteGraph{make_kgraph(k, n, std::move(edges)), std::move(p)};
}

// Star-like construction: A is the first a vertices; edges are the k-sets
// meeting A.  Edge count is C(n,k) - C(n-a,k).
inline KGraph star_kgraph(int n, int k, int a) {
    if (a < 0 || a > n) throw invalid_query("head size out of range");
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const Edge& e) {
        if (e.front() < a) edges.push_back(e);
    });
    return make_kgraph(k, n, std::move(edges));
}

// A is the first a vertices, B the rest; edges are the k-sets inside A plus
// those with at least r vertices in B.
inline KGraph clique_plus_kgraph(int n, int k, int a, int r) {
    if (a < 0 || a > n) throw invalid_query("head size out of range");
    if (r < 0 || r > k) throw invalid_query("tail threshold out of range");
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const Edge& e) {
        int in_b = 0;
        for (int v : e)
            if (v >= a) ++in_b;
        if (in_b == 0 || in_b >= r) edges.push_back(e);
    });
    return make_kgraph(k, n, std::move(edges));
}

// Parity construction on k classes of size n each, classes consecutive.
// Each class V_i splits into a low side (its first (1-alpha)n vertices) and
// a high side; a transversal k-set is an edge exactly when it meets an odd
// number of high sides.  Requires alpha*n integral.
struct ParityGraph {
    KGraph graph;
    GroundPartition parts;
    std::vector<int> side;  // 0 = low, 1 = high, per vertex
};

inline ParityGraph parity_kgraph(int n_per_part, int k, const rational& alpha) {
    if (n_per_part < 1 || k < 1) throw invalid_query("bad parity parameters");
    if (alpha < 0 || alpha > 1) throw invalid_query("split fraction out of range");
    const rational an = alpha * n_per_part;
    if (boost::multiprecision::denominator(an) != 1)
        throw invalid_query("split fraction times class size must be an integer");
    const int high = static_cast<int>(boost::multiprecision::numerator(an)
                                          .template convert_to<std::int64_t>());
    const int low = n_per_part - high;
    GroundPartition p = contiguous_partition(k, n_per_part);
    const int n = p.n();
    std::vector<int> side(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) side[static_cast<std::size_t>(v)] = (v % n_per_part) < low ? 0 : 1;
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const Edge& e) {
        if (!is_partite_set(e, p) || static_cast<int>(index_of(e, p).size()) != k) return;
        int parity = 0;
        for (int v : e) parity ^= side[static_cast<std::size_t>(v)];
        if (parity == 1) edges.push_back(e);
    });
    return ParityGraph{make_kgraph(k, n, std::move(edges)), std::move(p), std::move(side)};
}

// Tight cycle on l >= k vertices: every window of k cyclically consecutive
// vertices.  l = k collapses to a single edge.
inline KGraph tight_cycle_kgraph(int l, int k) {
    if (k < 1 || l < k) throw invalid_query("cycle needs at least k vertices");
    std::vector<Edge> edges;
    for (int i = 0; i < l; ++i) {
        Edge e;
        for (int j = 0; j < k; ++j) e.push_back((i + j) % l);
        std::sort(e.begin(), e.end());
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return make_kgraph(k, l, std::move(edges));
}

// Tight path on v >= k-1 vertices: windows of k consecutive vertices.
// v = k-1 (or any v < k) gives the edgeless degenerate path host.
inline KGraph tight_path_kgraph(int v, int k) {
    if (k < 1 || v < k - 1) throw invalid_query("path needs at least k-1 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i + k <= v; ++i) {
        Edge e;
        for (int j = 0; j < k; ++j) e.push_back(i + j);
        edges.push_back(e);
    }
    return make_kgraph(k, v, std::move(edges));
}

// Seeded binomial random k-graph: each k-set kept independently with
// probability p, decided by one 64-bit draw per set in lexicographic order.
inline KGraph random_kgraph(int n, int k, const rational& p, std::uint64_t seed) {
    if (p < 0 || p > 1) throw invalid_query("probability out of range");
    const std::uint64_t num = boost::multiprecision::numerator(p).template convert_to<std::uint64_t>();
    const std::uint64_t den = boost::multiprecision::denominator(p).template convert_to<std::uint64_t>();
    Rng rng(derive_seed(seed, 0x6E4A11ull));
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const Edge& e) {
        if (rng.bernoulli(num, den)) edges.push_back(e);
    });
    return make_kgraph(k, n, std::move(edges));
}

// Down-closure of the complete k-graph on kr-1 vertices.  Its top two level
// counts satisfy e_k = (r-1) e_{k-1} exactly and its matching number is
// r-1; both identities are asserted on construction.
inline Complex tightness_complex(int k, int r) {
    if (k < 2 || r < 1) throw invalid_query("need k >= 2 and r >= 1");
    const int n = k * r - 1;
    Complex c = down_closure(complete_kgraph(n, k));
    const bigint ek = binomial(n, k);
    const bigint ek1 = binomial(n, k - 1);
    if (bigint(c.levels[static_cast<std::size_t>(k)].size()) != ek ||
        bigint(ek) != bigint(r - 1) * ek1)
        throw error("level counts disagree with the closed form");
    if (matching_number(top_level(c)) != r - 1)
        throw error("matching number disagrees with the closed form");
    return c;
}

// ---------------------------------------------------------------------------
// Named construction specs, used by the command line and fixtures.

struct GenSpec {
    std::string name;
    std::vector<std::string> args;

    std::string describe() const {
        std::string out = name;
        for (const std::string& a : args) out += " " + a;
        return out;
    }
};

namespace detail {

inline int gen_int(const GenSpec& s, std::size_t i) {
    if (i >= s.args.size()) throw invalid_query("missing argument for " + s.name);
    try {
        std::size_t pos = 0;
        int v = std::stoi(s.args[i], &pos);
        if (pos != s.args[i].size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw invalid_query("bad integer argument '" + s.args[i] + "' for " + s.name);
    }
}

inline rational gen_rational(const GenSpec& s, std::size_t i) {
    if (i >= s.args.size()) throw invalid_query("missing argument for " + s.name);
    return parse_rational(s.args[i]);
}

inline std::uint64_t gen_u64(const GenSpec& s, std::size_t i) {
    if (i >= s.args.size()) throw invalid_query("missing argument for " + s.name);
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(s.args[i], &pos);
        if (pos != s.args[i].size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw invalid_query("bad seed argument '" + s.args[i] + "' for " + s.name);
    }
}

}  // namespace detail

// Builds the k-graph a GenSpec names.  Part structure of the partite
// constructions is recoverable from the parameters.
inline KGraph construct(const GenSpec& s) {
    using detail::gen_int;
    if (s.name == "complete") return complete_kgraph(gen_int(s, 0), gen_int(s, 1));
    if (s.name == "complete_partite") {
        if (s.args.size() < 2) throw invalid_query("complete_partite needs sizes and k");
        std::vector<int> sizes;
        for (std::size_t i = 0; i + 1 < s.args.size(); ++i) sizes.push_back(gen_int(s, i));
        return complete_partite(sizes, gen_int(s, s.args.size() - 1)).graph;
    }
    if (s.name == "star") return star_kgraph(gen_int(s, 0), gen_int(s, 1), gen_int(s, 2));
    if (s.name == "clique_plus")
        return clique_plus_kgraph(gen_int(s, 0), gen_int(s, 1), gen_int(s, 2), gen_int(s, 3));
    if (s.name == "parity")
        return parity_kgraph(gen_int(s, 0), gen_int(s, 1), detail::gen_rational(s, 2)).graph;
    if (s.name == "tight_cycle") return tight_cycle_kgraph(gen_int(s, 0), gen_int(s, 1));
    if (s.name == "tight_path") return tight_path_kgraph(gen_int(s, 0), gen_int(s, 1));
    if (s.name == "random")
        return random_kgraph(gen_int(s, 0), gen_int(s, 1), detail::gen_rational(s, 2),
                             detail::gen_u64(s, 3));
    throw invalid_query("unknown construction '" + s.name + "'");
}

}  // namespace hyperslice
