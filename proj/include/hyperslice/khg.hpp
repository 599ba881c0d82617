// khg.hpp - plain-text k-hypergraph file format
//
// Grammar (one directive per line, '#' starts a comment to end of line):
//
//   khg 1
//   k <uniformity>
//   n <vertex count>
//   e <v1> <v2> ... <vk>        (zero or more)
//
// The header lines must appear in the order shown.  Vertices are 0-based.
// Duplicate edges are rejected.  Errors carry 1-based line numbers.
#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace hyperslice {

namespace detail {

inline bool khg_parse_int(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == tok.size();
}

}  // namespace detail

inline KGraph parse_khg(std::istream& in) {
    std::string line;
    int lineno = 0;
    int header = 0;  // how many of the three header directives were seen
    int k = 0, n = 0;
    std::vector<Edge> edges;
    std::vector<std::pair<Edge, int>> edge_lines;

    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;

        if (header == 0) {
            if (toks.size() != 2 || toks[0] != "khg" || toks[1] != "1")
                throw parse_error(lineno, "expected 'khg 1' header");
            header = 1;
            continue;
        }
        if (header == 1) {
            long long v;
            if (toks.size() != 2 || toks[0] != "k" || !detail::khg_parse_int(toks[1], v))
                throw parse_error(lineno, "expected 'k <uniformity>'");
            if (v < 1 || v > 64) throw parse_error(lineno, "uniformity out of range");
            k = static_cast<int>(v);
            header = 2;
            continue;
        }
        if (header == 2) {
            long long v;
            if (toks.size() != 2 || toks[0] != "n" || !detail::khg_parse_int(toks[1], v))
                throw parse_error(lineno, "expected 'n <vertex count>'");
            if (v < 0 || v > 1000000) throw parse_error(lineno, "vertex count out of range");
            n = static_cast<int>(v);
            header = 3;
            continue;
        }
        if (toks[0] != "e")
            throw parse_error(lineno, "unknown directive '" + toks[0] + "'");
        if (static_cast<int>(toks.size()) - 1 != k)
            throw parse_error(lineno, "edge has " + std::to_string(toks.size() - 1) +
                                          " vertices, expected " + std::to_string(k));
        Edge e;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            long long v;
            if (!detail::khg_parse_int(toks[i], v))
                throw parse_error(lineno, "bad vertex token '" + toks[i] + "'");
            if (v < 0 || v >= n) throw parse_error(lineno, "vertex out of range [0," +
                                                               std::to_string(n) + ")");
            e.push_back(static_cast<int>(v));
        }
        std::sort(e.begin(), e.end());
        if (!is_sorted_unique(e)) throw parse_error(lineno, "edge has a repeated vertex");
        edge_lines.emplace_back(e, lineno);
    }
    if (header < 3) throw parse_error(lineno, "incomplete header (need khg, k, n)");

    std::vector<std::pair<Edge, int>> sorted = edge_lines;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1].first == sorted[i].first)
            throw parse_error(sorted[i].second, "duplicate edge");
    for (auto& p : sorted) edges.push_back(std::move(p.first));
    return make_kgraph(k, n, std::move(edges));
}

inline KGraph parse_khg(const std::string& text) {
    std::istringstream in(text);
    return parse_khg(in);
}

// Canonical serialization: header, then edges in lexicographic order.
// parse_khg(serialize_khg(g)) reproduces g exactly, and serializing a parsed
// canonical file reproduces the file byte for byte.
inline std::string serialize_khg(const KGraph& g, const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    out << "khg 1\n";
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "k " << g.k << "\n";
    out << "n " << g.n << "\n";
    for (const Edge& e : g.edges) {
        out << "e";
        for (int v : e) out << ' ' << v;
        out << "\n";
    }
    return out.str();
}

}  // namespace hyperslice
