// report.hpp - byte-stable JSON and CSV emission
//
// Reports are reproducible: object keys are emitted in sorted order (the
// default for nlohmann's map-backed json), rationals are serialized as
// "p/q" strings (bare "p" when integral), and CSV floating-point cells carry
// exactly twelve fractional digits.  Timestamps never appear unless a caller
// adds them explicitly.
#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "util.hpp"

namespace hyperslice {

using json = nlohmann::json;

inline json rational_json(const rational& q) { return json(to_string(q)); }

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// CSV cell for a double: integers bare, everything else with exactly twelve
// fractional digits.
inline std::string csv_number(double v) {
    if (v == static_cast<double>(static_cast<long long>(v))) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

inline std::string csv_number(const rational& q) {
    if (boost::multiprecision::denominator(q) == 1)
        return boost::multiprecision::numerator(q).str();
    return csv_number(to_double(q));
}

struct CsvWriter {
    std::string out;

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }
};

}  // namespace hyperslice
