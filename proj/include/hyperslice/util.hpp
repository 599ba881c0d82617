// util.hpp - error types, exact rationals, and small combinatorial helpers
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace hyperslice {

using rational = boost::multiprecision::mpq_rational;
using bigint = boost::multiprecision::mpz_int;

// An edge is a sorted vector of distinct vertex ids.
using Edge = std::vector<int>;

// ---------------------------------------------------------------------------
// Errors

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A query whose preconditions do not hold (bad sizes, indices out of range...).
struct invalid_query : error {
    using error::error;
};

// An enumeration would exceed the configured subset-count cap.
struct capacity_exceeded : error {
    using error::error;
};

// Two walks cannot be concatenated because their end tuples differ.
struct tuple_mismatch : error {
    using error::error;
};

// Two edges lie in different tight components.
struct not_tightly_connected : error {
    using error::error;
};

// A lemma hypothesis does not hold; `condition` names the violated clause.
struct hypothesis_violated : error {
    std::string condition;
    hypothesis_violated(std::string cond, const std::string& what)
        : error(what), condition(std::move(cond)) {}
};

// Text input that does not conform to a file grammar; `line` is 1-based.
struct parse_error : error {
    int line;
    parse_error(int line_, const std::string& what)
        : error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// ---------------------------------------------------------------------------
// Capacity guard for subset enumerations (default 2^24 sets).

struct Capacity {
    std::uint64_t max_sets = std::uint64_t(1) << 24;
};

// ---------------------------------------------------------------------------
// Rationals

inline std::string to_string(const rational& q) {
    return q.str();  // "p/q", or "p" when the denominator is 1
}

inline rational parse_rational(const std::string& s) {
    try {
        return rational(s);
    } catch (const std::exception&) {
        throw invalid_query("not a rational: '" + s + "'");
    }
}

inline double to_double(const rational& q) {
    return q.template convert_to<double>();
}

inline rational rational_pow(const rational& base, std::uint64_t e) {
    rational out = 1;
    for (std::uint64_t i = 0; i < e; ++i) out *= base;
    return out;
}

inline rational rational_abs(const rational& q) { return q < 0 ? rational(-q) : q; }

// ---------------------------------------------------------------------------
// Binomials and factorials (exact)

inline bigint binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    bigint out = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        out *= bigint(n - i);
        out /= bigint(i + 1);  // divides exactly at every step
    }
    return out;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    bigint b = binomial(n, k);
    if (b > bigint(UINT64_MAX)) throw capacity_exceeded("binomial overflows 64 bits");
    return b.template convert_to<std::uint64_t>();
}

inline bigint factorial(std::uint64_t n) {
    bigint out = 1;
    for (std::uint64_t i = 2; i <= n; ++i) out *= bigint(i);
    return out;
}

// ---------------------------------------------------------------------------
// Sorted-set helpers on Edge

inline bool is_sorted_unique(const Edge& e) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i - 1] >= e[i]) return false;
    return true;
}

inline Edge sorted_copy(Edge e) {
    std::sort(e.begin(), e.end());
    return e;
}

inline bool contains_vertex(const Edge& e, int v) {
    return std::binary_search(e.begin(), e.end(), v);
}

inline bool is_subset(const Edge& a, const Edge& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::size_t intersection_size(const Edge& a, const Edge& b) {
    std::size_t i = 0, j = 0, out = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++out; ++i; ++j; }
    }
    return out;
}

inline Edge edge_union(const Edge& a, const Edge& b) {
    Edge out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Edge edge_minus(const Edge& a, const Edge& b) {
    Edge out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Edge edge_insert(Edge e, int v) {
    e.insert(std::upper_bound(e.begin(), e.end(), v), v);
    return e;
}

inline Edge edge_erase(Edge e, int v) {
    auto it = std::lower_bound(e.begin(), e.end(), v);
    if (it != e.end() && *it == v) e.erase(it);
    return e;
}

// ---------------------------------------------------------------------------
// Enumeration of k-subsets in lexicographic order

// Calls fn(const Edge&) for every sorted k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    Edge cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        fn(static_cast<const Edge&>(cur));
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

// Calls fn(const Edge&) for every sorted k-subset of the sorted id list
// `items`, in lexicographic order.
template <class Fn>
void for_each_subset_of(const Edge& items, int k, Fn&& fn) {
    for_each_subset(static_cast<int>(items.size()), k, [&](const Edge& idx) {
        Edge out(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) out[i] = items[idx[i]];
        fn(static_cast<const Edge&>(out));
    });
}

// Calls fn on every subset of the sorted set `e` (including the empty set and
// e itself), in order of increasing bitmask over positions.
template <class Fn>
void for_each_subset_mask(const Edge& e, Fn&& fn) {
    const std::size_t m = e.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        Edge sub;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) sub.push_back(e[i]);
        fn(static_cast<const Edge&>(sub));
    }
}

}  // namespace hyperslice
