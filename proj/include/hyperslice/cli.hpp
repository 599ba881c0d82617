// cli.hpp - subcommand dispatch for the hyperslice tool
//
// Subcommands:
//   analyze         exact summary of one .khg graph (components, matchings,
//                   local LYM margins, reduced-graph entropy) as JSON
//   search          tight cycle / longest path search with explicit budgets
//   sweep eg        edge-probability grid: random graphs vs longest tight cycle
//   sweep partite   cluster-count x alpha grid for the partite matching lemma
//   slice stats     slice enumeration, probability and frequency checks
//   compress        prune/compress pipeline trace and the certified matching
//   gen             write a named construction as a .khg file
//   verify          run the bundled invariant suites
//
// Exit codes: 0 success, 1 property violated, 2 input error, 3 budget or
// capacity exhausted.  All output is byte-stable for a fixed command line:
// JSON keys are sorted, CSV rows follow the grid order, and no timestamps
// appear unless --timestamps is given.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "compress.hpp"
#include "family.hpp"
#include "generators.hpp"
#include "khg.hpp"
#include "matching.hpp"
#include "regularity.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "tight.hpp"

namespace hyperslice {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;
constexpr int exit_budget = 3;

namespace cli_detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Accepts integers, fractions "p/q", and decimals "0.25"; exact in all cases.
inline rational parse_rational_arg(const std::string& text) {
    const auto fail = [&]() -> rational {
        throw invalid_query("cannot parse number '" + text + "'");
    };
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) return fail();
    const std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        const bigint d(den);
        if (d == 0) throw invalid_query("zero denominator in '" + text + "'");
        const rational q(bigint(num), d);
        return neg ? -q : q;
    }
    const std::size_t dot = s.find('.');
    std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
    const std::string fp = dot == std::string::npos ? std::string() : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return fail();
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) return fail();
    rational q{bigint(ip)};
    if (!fp.empty()) {
        bigint den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        q += rational(bigint(fp), den);
    }
    return neg ? -q : q;
}

// "value" or "lo:hi:step", all exact rationals; the grid is inclusive.
inline std::vector<rational> parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = s.find(':', start);
        parts.push_back(s.substr(start, colon == std::string::npos ? std::string::npos
                                                                   : colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) return {parse_rational_arg(parts[0])};
    if (parts.size() != 3) throw invalid_query("grid must be 'value' or 'lo:hi:step'");
    const rational lo = parse_rational_arg(parts[0]);
    const rational hi = parse_rational_arg(parts[1]);
    const rational step = parse_rational_arg(parts[2]);
    if (step <= 0) throw invalid_query("grid step must be positive");
    if (lo > hi) throw invalid_query("grid low endpoint exceeds its high endpoint");
    std::vector<rational> out;
    for (rational v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

inline std::vector<int> parse_int_grid(const std::string& s) {
    std::vector<int> out;
    for (const rational& v : parse_grid(s)) {
        if (boost::multiprecision::denominator(v) != 1)
            throw invalid_query("grid value " + to_string(v) + " is not an integer");
        out.push_back(boost::multiprecision::numerator(v).convert_to<int>());
    }
    return out;
}

inline KGraph load_khg(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_query("cannot open '" + path + "'");
    return parse_khg(in);
}

inline void emit(const std::string& bytes, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw invalid_query("cannot write '" + out_path + "'");
    out << bytes;
}

inline std::string edge_key(const Edge& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(e[i]);
    }
    return out;
}

inline std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

// Worker count for a sweep: hardware threads, capped by HYPERSLICE_THREADS
// and by the number of cells.
inline std::size_t sweep_threads(std::size_t cells) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("HYPERSLICE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 1)
            throw invalid_query("HYPERSLICE_THREADS must be a positive integer");
        n = std::min(n, static_cast<std::size_t>(cap));
    }
    if (cells == 0) return 1;
    return std::min(n, cells);
}

// Runs cell(i) for i in [0, count).  Cells must only write their own slots;
// rows are assembled in index order afterwards, so the output is independent
// of the schedule.  The first exception wins and is rethrown after joining.
template <typename F>
inline void run_cells(std::size_t count, F&& cell) {
    const std::size_t workers = sweep_threads(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) cell(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    const auto drain = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                cell(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// Family with one cluster per edge slot and every density 1; its single
// slice supports all partite sets, so the reduced graph has one weight per
// cluster k-set.  Used by analyze for the entropy summary.
inline PartitionFamily trivial_family(int k, int n) {
    PartitionFamily f;
    f.k = k;
    f.ground = round_robin_partition(k, n);
    f.dv = make_density_vector(k, std::vector<std::uint64_t>(static_cast<std::size_t>(k - 2), 1));
    f.labels.resize(static_cast<std::size_t>(k - 2));
    for (int i = 2; i <= k - 1; ++i)
        for_each_subset(n, i, [&](const Edge& s) {
            if (is_partite_set(s, f.ground))
                f.labels[static_cast<std::size_t>(i) - 2].emplace(s, 1);
        });
    return f;
}

inline std::string slice_key(const Slice& s) {
    std::string out;
    for (const auto& level : s.chosen)
        for (const auto& [clusters, label] : level) {
            out += edge_key(clusters);
            out += '=';
            out += std::to_string(label);
            out += ';';
        }
    return out;
}

inline std::string status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::ExhaustiveNegative: return "exhaustive_negative";
        default: return "budget_exhausted";
    }
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// analyze

inline int cmd_analyze(const std::string& path, const std::string& out_path, bool timestamps) {
    using namespace cli_detail;
    const KGraph g = load_khg(path);
    json rep;
    rep["k"] = g.k;
    rep["n"] = g.n;
    rep["edges"] = g.edge_count();
    rep["components"] = tight_components(g).count;
    rep["matching_number"] = matching_number(g);

    const FractionalMatching fm = max_fractional_matching(g);
    json weights = json::object();
    for (const auto& [e, w] : fm.weights) weights[edge_key(e)] = rational_json(w);
    rep["fractional_matching"] = {{"total", rational_json(fm.total)}, {"weights", weights}};

    const Complex c = down_closure(g);
    json margins = json::array();
    for (int i = 1; i <= g.k; ++i) margins.push_back(rational_json(local_lym_margin(c, i)));
    rep["lym_margins"] = margins;

    // Mean edge-weight entropy of the reduced graph with k round-robin
    // clusters; defined only when every cluster is nonempty.
    if (g.k >= 2 && g.n >= g.k) {
        const PartitionFamily f = trivial_family(g.k, g.n);
        const Slice s = sample_slice(f, 0);
        rep["entropy"] = reduced_entropy(weighted_reduced(g, f, s));
    } else {
        rep["entropy"] = nullptr;
    }

    if (timestamps) rep["generated_at"] = iso_timestamp();
    emit(dump_json(rep), out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// search

struct SearchOptions {
    std::string path;
    std::string goal = "cycle";
    int len = 0;  // 0 means longest
    std::uint64_t budget = 10000000;
    bool allow_short = false;
    std::string out_path;
    bool timestamps = false;
};

inline int cmd_search(const SearchOptions& opt) {
    using namespace cli_detail;
    const KGraph g = load_khg(opt.path);
    SearchResult r;
    if (opt.goal == "cycle") {
        if (opt.len > 0)
            r = search_tight_cycle(g, opt.len, opt.budget, opt.allow_short);
        else
            r = search_longest_cycle(g, opt.budget, opt.allow_short);
    } else if (opt.goal == "path") {
        r = search_longest_path(g, opt.budget);
    } else {
        throw invalid_query("goal must be 'cycle' or 'path'");
    }

    json rep;
    rep["goal"] = opt.goal;
    rep["status"] = status_name(r.status);
    rep["expansions"] = r.expansions;
    rep["best_vertices"] = r.best_vertices;
    if (r.witness) {
        const bool cyclic = opt.goal == "cycle";
        const WalkCheck chk =
            verify_tight(r.witness->vertices, g, cyclic, true, opt.allow_short);
        if (!chk.ok) throw error("search produced an invalid witness: " + chk.defect->what);
        rep["witness"] = r.witness->vertices;
    } else {
        rep["witness"] = nullptr;
    }
    if (opt.timestamps) rep["generated_at"] = iso_timestamp();
    emit(dump_json(rep), opt.out_path);
    return r.status == SearchStatus::BudgetExhausted ? exit_budget : exit_ok;
}

// ---------------------------------------------------------------------------
// sweep eg

struct SweepEgOptions {
    int n = 8;
    int k = 3;
    std::string p_grid = "0:1:0.25";
    std::uint64_t trials = 5;
    std::uint64_t seed = 1;
    std::uint64_t budget = 10000000;
    std::string out_path;
};

inline int cmd_sweep_eg(const SweepEgOptions& opt) {
    using namespace cli_detail;
    const std::vector<rational> ps = parse_grid(opt.p_grid);
    for (const rational& p : ps)
        if (p < 0 || p > 1) throw invalid_query("edge probability must lie in [0,1]");
    if (opt.trials < 1) throw invalid_query("need at least one trial");

    struct Row {
        std::string p, seed, edges, cycle;
    };
    std::vector<Row> rows(ps.size() * opt.trials);
    std::atomic<bool> exhausted{false};
    run_cells(rows.size(), [&](std::size_t idx) {
        const std::size_t pi = idx / opt.trials;
        const std::uint64_t trial = idx % opt.trials;
        const std::uint64_t cell_seed = derive_seed(opt.seed, {pi, trial});
        const KGraph g = random_kgraph(opt.n, opt.k, ps[pi], cell_seed);
        const SearchResult r = search_longest_cycle(g, opt.budget);
        if (r.status == SearchStatus::BudgetExhausted) {
            exhausted = true;
            return;
        }
        int cycle = 0;
        if (r.witness) {
            if (!verify_tight(r.witness->vertices, g, true, true).ok)
                throw error("sweep produced an invalid cycle witness");
            cycle = static_cast<int>(r.witness->vertices.size());
        }
        rows[idx] = Row{csv_number(ps[pi]), std::to_string(cell_seed),
                        std::to_string(g.edge_count()), std::to_string(cycle)};
    });
    if (exhausted) {
        std::cerr << "error: search budget exhausted during the sweep\n";
        return exit_budget;
    }

    CsvWriter w;
    w.row({"p", "seed", "edges", "longest_cycle"});
    for (const Row& r : rows) w.row({r.p, r.seed, r.edges, r.cycle});
    emit(w.out, opt.out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// sweep partite

struct SweepPartiteOptions {
    int k = 3;
    std::string t_grid = "2:4:1";
    std::string alpha_grid = "1/4:3/4:1/4";
    std::string beta = "1/32";
    std::string mode = "matching";
    std::string out_path;
};

inline int cmd_sweep_partite(const SweepPartiteOptions& opt) {
    using namespace cli_detail;
    const std::vector<int> ts = parse_int_grid(opt.t_grid);
    const std::vector<rational> alphas = parse_grid(opt.alpha_grid);
    const rational beta = parse_rational_arg(opt.beta);
    PartiteMatchingMode mode;
    if (opt.mode == "matching")
        mode = PartiteMatchingMode::Matching;
    else if (opt.mode == "perfect")
        mode = PartiteMatchingMode::PerfectFractional;
    else
        throw invalid_query("mode must be 'matching' or 'perfect'");
    for (int t : ts)
        if (t < 1) throw invalid_query("cluster count must be positive");

    struct Row {
        std::string t, alpha, status, matching, components, lp;
    };
    std::vector<Row> rows(ts.size() * alphas.size());
    run_cells(rows.size(), [&](std::size_t idx) {
        const int t = ts[idx / alphas.size()];
        const rational alpha = alphas[idx % alphas.size()];
        const PartiteGraph pg = complete_partite(std::vector<int>(opt.k, t), opt.k);
        const Complex c = down_closure(pg.graph);
        Row row{std::to_string(t), csv_number(alpha), "ok", "0", "", ""};
        try {
            const ConnectedMatching m =
                partite_connected_matching(c, pg.parts, alpha, beta, mode);
            row.matching = std::to_string(m.matching.size());
            row.components = std::to_string(m.component_count);
            if (m.fractional) row.lp = csv_number(m.fractional->total);
        } catch (const hypothesis_violated& e) {
            row.status = e.condition;
        }
        rows[idx] = row;
    });

    CsvWriter w;
    w.row({"t", "alpha", "status", "matching", "components", "lp_weight"});
    for (const Row& r : rows) w.row({r.t, r.alpha, r.status, r.matching, r.components, r.lp});
    emit(w.out, opt.out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// slice stats

struct SliceStatsOptions {
    int k = 3;
    int t = 3;
    int m = 2;
    std::vector<std::uint64_t> reciprocals;  // one per level 2..k-1
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000;
    std::string host_path;  // optional: attach a quality report
    std::string d = "1/2";
    std::string eps = "1/4";
    int r = 1;
    std::uint64_t falsify_trials = 200;
    std::string out_path;
    bool timestamps = false;
};

inline int cmd_slice_stats(const SliceStatsOptions& opt) {
    using namespace cli_detail;
    const DensityVector dv = make_density_vector(opt.k, opt.reciprocals);
    const PartitionFamily f = random_family(opt.k, opt.t, opt.m, dv, opt.seed);

    bigint total = 1;
    for (int i = 2; i <= opt.k - 1; ++i)
        total *= boost::multiprecision::pow(
            bigint(dv.reciprocal[static_cast<std::size_t>(i) - 2]),
            static_cast<unsigned>(binomial_u64(static_cast<std::uint64_t>(opt.t),
                                               static_cast<std::uint64_t>(i))));

    json rep;
    rep["k"] = opt.k;
    rep["t"] = opt.t;
    rep["m"] = opt.m;
    rep["slices"] = total.str();
    rep["samples"] = opt.samples;

    const bool enumerable = total <= 4096;
    std::map<std::string, rational> prob;
    if (enumerable) {
        rational sum = 0;
        for (const Slice& s : enumerate_slices(f)) {
            const rational p = slice_probability(f, s);
            prob[slice_key(s)] = p;
            sum += p;
        }
        rep["probability_sum"] = rational_json(sum);
        if (sum != 1) throw error("slice probabilities do not sum to one");
    } else {
        rep["probability_sum"] = nullptr;
    }

    std::map<std::string, std::uint64_t> freq;
    for (std::uint64_t i = 0; i < opt.samples; ++i) {
        const Slice s = sample_slice(f, derive_seed(opt.seed, {1, i}));
        require_slice_of(f, s);
        ++freq[slice_key(s)];
    }
    rep["distinct_sampled"] = freq.size();
    if (enumerable && opt.samples > 0) {
        for (const auto& [key, count] : freq)
            if (!prob.count(key)) throw error("sampled a slice outside the enumeration");
        double max_dev = 0.0;
        for (const auto& [key, p] : prob) {
            const auto it = freq.find(key);
            const double fr =
                it == freq.end() ? 0.0
                                 : static_cast<double>(it->second) /
                                       static_cast<double>(opt.samples);
            max_dev = std::max(max_dev, std::fabs(fr - to_double(p)));
        }
        rep["max_abs_deviation"] = max_dev;
    } else {
        rep["max_abs_deviation"] = nullptr;
    }

    if (!opt.host_path.empty()) {
        const KGraph g = load_khg(opt.host_path);
        const Slice s = sample_slice(f, derive_seed(opt.seed, {2, 0}));
        Edge x;
        for (int i = 0; i < opt.t; ++i) x.push_back(i);
        Edge pattern_edge;
        for (int v = 0; v < opt.k; ++v) pattern_edge.push_back(v);
        const KGraph pattern = make_kgraph(opt.k, opt.k, {pattern_edge});
        const SliceQualityReport q = slice_quality_report(
            g, f, s, {pattern}, x, {}, parse_rational_arg(opt.d),
            parse_rational_arg(opt.eps), opt.r, opt.falsify_trials,
            derive_seed(opt.seed, {3, 0}));
        json quality;
        quality["irregular_fraction"] = rational_json(q.irregular_fraction);
        quality["max_counting_deviation"] = rational_json(q.max_counting_deviation);
        json patterns = json::array();
        for (const auto& row : q.patterns)
            patterns.push_back({{"weighted", rational_json(row.weighted)},
                                {"host", rational_json(row.host)},
                                {"discrepancy", rational_json(row.discrepancy)},
                                {"thresholded", rational_json(row.thresholded)},
                                {"slack", rational_json(row.slack)}});
        quality["patterns"] = patterns;
        json degrees = json::array();
        for (const auto& row : q.degrees) {
            json d;
            d["y"] = row.y;
            d["weighted"] = rational_json(row.weighted);
            d["host"] = row.host_defined ? rational_json(row.host) : json();
            d["discrepancy"] = rational_json(row.discrepancy);
            d["thresholded"] = rational_json(row.thresholded);
            d["zeta"] = rational_json(row.zeta);
            d["slack"] = rational_json(row.slack);
            degrees.push_back(d);
        }
        quality["degrees"] = degrees;
        json counts = json::array();
        for (const auto& row : q.counting)
            counts.push_back({{"clusters", row.clusters},
                              {"cliques", row.cliques},
                              {"deviation", rational_json(row.deviation)}});
        quality["counting"] = counts;
        rep["quality"] = quality;
    }

    if (opt.timestamps) rep["generated_at"] = iso_timestamp();
    emit(dump_json(rep), opt.out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// compress

inline int cmd_compress(const std::string& path, std::int64_t r, const std::string& out_path,
                        bool timestamps) {
    using namespace cli_detail;
    const KGraph g = load_khg(path);
    const Complex c = down_closure(g);
    CompressTrace trace;
    const RatioMatching rm = ratio_matching(c, r, &trace);

    json rep;
    rep["k"] = g.k;
    rep["n"] = g.n;
    rep["r"] = r;
    json stages = json::array();
    for (const auto& [name, counts] : trace.stages)
        stages.push_back({{"name", name}, {"levels", counts}});
    rep["stages"] = stages;
    rep["matching"] = rm.matching.edges;
    rep["processed_levels"] = level_counts(rm.processed);
    if (timestamps) rep["generated_at"] = iso_timestamp();
    emit(dump_json(rep), out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// gen

inline int cmd_gen(const std::string& name, const std::vector<std::string>& args,
                   const std::string& out_path) {
    using namespace cli_detail;
    const GenSpec spec{name, args};
    const KGraph g = construct(spec);
    emit(serialize_khg(g, {"gen " + spec.describe()}), out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify: bundled invariant suites, deterministic and fast

namespace cli_detail {

inline void check(bool ok, const char* what) {
    if (!ok) throw error(what);
}

inline void verify_khg_roundtrip() {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const int k = 2 + static_cast<int>(i % 3);
        const int n = k + 2 + static_cast<int>(i % 5);
        const KGraph g = random_kgraph(n, k, rational(1, 2), derive_seed(0xC11, i));
        const std::string text = serialize_khg(g);
        const KGraph back = parse_khg(text);
        check(back == g, "khg round-trip changed the graph");
        check(serialize_khg(back) == text, "khg serialization is not canonical");
    }
    try {
        parse_khg(std::string("khg 1\nk 3\nn 4\ne 0 1\n"));
        throw error("edge arity violation was not rejected");
    } catch (const parse_error& e) {
        check(e.line == 4, "edge arity violation reported the wrong line");
    }
}

inline void verify_walk_algebra() {
    const KGraph g = complete_kgraph(9, 3);
    Rng rng(derive_seed(0xC11, 1001));
    for (int rep = 0; rep < 100; ++rep) {
        const int len = 5 + static_cast<int>(rng.below(5));
        std::vector<int> seq(9);
        for (int v = 0; v < 9; ++v) seq[v] = v;
        rng.shuffle(seq);
        seq.resize(static_cast<std::size_t>(len));
        const int split = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(len - 3)));

        const TightWalk whole = make_walk(g, seq);
        const TightWalk a = make_walk(g, std::vector<int>(seq.begin(), seq.begin() + split));
        const TightWalk b =
            make_walk(g, std::vector<int>(seq.begin() + split - 2, seq.end()));
        check(concatenate(a, b) == whole, "concatenation did not reproduce the walk");
        check(whole.length() == a.length() + b.length(), "walk lengths are not additive");

        const TightWalk rev = reversing_walk(g, a);
        check(rev.length() == (g.k - 1) * a.length(),
              "reversing walk length is not (k-1) times the original");
    }
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::int64_t> repeats, lengths;
        const int nr = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < nr; ++i) repeats.push_back(static_cast<std::int64_t>(rng.below(50)));
        std::int64_t lsum = 0;
        for (int i = 0; i < nr; ++i) {
            const std::int64_t l = static_cast<std::int64_t>(rng.below(30));
            lengths.push_back(l);
            lsum += l;
        }
        lengths.push_back((3 - lsum % 3 + 3) % 3);
        check(plan_cycle_length(3, repeats, lengths) % 3 == 0,
              "planned cycle length is not a multiple of k");
    }
}

inline void verify_compress_suite() {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const KGraph g = random_kgraph(7, 3, rational(1, 2), derive_seed(0xC11, 2000 + i));
        const Complex c = down_closure(g);
        const Complex one = compress_ij(c, 0, 1);
        check(level_counts(one) == level_counts(c), "compression changed a level count");
        check(matching_number(top_level(one)) <= matching_number(top_level(c)),
              "compression raised the matching number");
        const Complex fixed = fully_compress(c);
        check(is_fully_compressed(fixed), "fully_compress returned a compressible complex");
        if (!fixed.is_empty())
            for (int lev = 1; lev <= fixed.k; ++lev)
                check(local_lym_margin(fixed, lev) >= 0,
                      "compressed complex violates the local LYM bound");
    }
}

inline void verify_lp_suite() {
    const FractionalMatching on_cycle = max_fractional_matching(tight_cycle_kgraph(9, 3));
    check(on_cycle.total == 3, "C9 fractional matching weight is not 3");

    const KGraph k4 = complete_kgraph(4, 3);
    const FractionalMatching fm = max_fractional_matching(k4);
    check(fm.total == rational(4, 3), "K4 fractional matching weight is not 4/3");
    rational cover_total = 0;
    for (const rational& y : fm.cover) cover_total += y;
    check(cover_total == fm.total, "duality gap on K4");
    for (const Edge& e : k4.edges) {
        rational load = 0;
        for (int v : e) load += fm.cover[v];
        check(load >= 1, "infeasible dual cover on K4");
    }
}

inline void verify_slice_suite() {
    const DensityVector dv = make_density_vector(3, {2});
    const PartitionFamily f = random_family(3, 3, 2, dv, 77);
    const std::vector<Slice> all = enumerate_slices(f);
    check(all.size() == 8, "expected 8 slices");
    rational sum = 0;
    for (const Slice& s : all) {
        const rational p = slice_probability(f, s);
        check(p == rational(1, 8), "slice probability is not 1/8");
        sum += p;
    }
    check(sum == 1, "slice probabilities do not sum to one");

    std::map<std::string, std::uint64_t> freq;
    for (std::uint64_t i = 0; i < 2000; ++i)
        ++freq[slice_key(sample_slice(f, derive_seed(0xC11, {5, i})))];
    check(freq.size() == 8, "sampling missed a slice");
    for (const auto& [key, count] : freq)
        check(std::fabs(static_cast<double>(count) / 2000.0 - 0.125) <= 0.05,
              "sampled slice frequency strays from 1/8");
}

inline void verify_entropy_suite() {
    WeightedReducedGraph g;
    g.t = 4;
    g.k = 3;
    for_each_subset(4, 3, [&](const Edge& x) { g.weight[x] = rational(1, 2); });
    check(std::fabs(reduced_entropy(g) - 1.0) <= 1e-12, "uniform 1/2 weights must have entropy 1");
    int idx = 0;
    for (auto& [x, w] : g.weight) w = (idx++ % 2) ? 1 : 0;
    check(std::fabs(reduced_entropy(g)) <= 1e-12, "0/1 weights must have entropy 0");
}

inline void verify_generator_suite() {
    for (int n = 3; n <= 9; ++n)
        for (int a = 0; a <= std::min(n, 2); ++a) {
            const bigint expect = binomial(static_cast<std::uint64_t>(n), 3) -
                                  binomial(static_cast<std::uint64_t>(n - a), 3);
            check(bigint(star_kgraph(n, 3, a).edge_count()) == expect,
                  "star edge count misses its closed form");
        }
    const ParityGraph pg = parity_kgraph(2, 3, rational(1, 2));
    for (const Edge& e : pg.graph.edges) {
        int high = 0;
        for (int v : e) high += pg.side[static_cast<std::size_t>(v)];
        check(high % 2 == 1, "parity edge with even high count");
    }
    for (int r = 1; r <= 3; ++r) {
        const Complex tc = tightness_complex(3, r);
        check(tc.levels[3].size() == static_cast<std::size_t>(r - 1) * tc.levels[2].size(),
              "tightness complex misses its level identity");
        check(matching_number(top_level(tc)) == r - 1,
              "tightness complex matching number is not r-1");
    }
}

}  // namespace cli_detail

inline int cmd_verify(const std::string& out_path) {
    using namespace cli_detail;
    std::string out;
    const auto suite = [&](const char* name, void (*fn)()) {
        fn();
        out += "ok ";
        out += name;
        out += '\n';
    };
    suite("khg-roundtrip", verify_khg_roundtrip);
    suite("walk-algebra", verify_walk_algebra);
    suite("compress", verify_compress_suite);
    suite("lp-matchings", verify_lp_suite);
    suite("slices", verify_slice_suite);
    suite("entropy", verify_entropy_suite);
    suite("generators", verify_generator_suite);
    emit(out, out_path);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// dispatch

inline int run_cli(int argc, char** argv) {
    CLI::App app{"exact tools for k-uniform hypergraphs: tight structure, matchings, slices"};
    app.require_subcommand(1);

    std::string analyze_path, analyze_out;
    bool analyze_ts = false;
    CLI::App* analyze = app.add_subcommand("analyze", "summarize one .khg graph as JSON");
    analyze->add_option("file", analyze_path, "input .khg file")->required();
    analyze->add_option("--out", analyze_out, "output file (default stdout)");
    analyze->add_flag("--timestamps", analyze_ts, "record the generation time");

    SearchOptions search_opt;
    CLI::App* search = app.add_subcommand("search", "search for tight cycles or paths");
    search->add_option("file", search_opt.path, "input .khg file")->required();
    search->add_option("--goal", search_opt.goal, "cycle or path (default cycle)");
    search->add_option("--len", search_opt.len, "exact cycle length (default: longest)");
    search->add_option("--budget", search_opt.budget, "search expansion budget");
    search->add_flag("--allow-short", search_opt.allow_short,
                     "accept cycles of exactly k vertices");
    search->add_option("--out", search_opt.out_path, "output file (default stdout)");
    search->add_flag("--timestamps", search_opt.timestamps, "record the generation time");

    CLI::App* sweep = app.add_subcommand("sweep", "grid experiments emitting CSV");
    sweep->require_subcommand(1);

    SweepEgOptions eg_opt;
    CLI::App* eg = sweep->add_subcommand("eg", "edge probability vs longest tight cycle");
    eg->add_option("--n", eg_opt.n, "vertex count");
    eg->add_option("--k", eg_opt.k, "uniformity");
    eg->add_option("--p", eg_opt.p_grid, "probability grid lo:hi:step");
    eg->add_option("--trials", eg_opt.trials, "graphs per grid cell");
    eg->add_option("--seed", eg_opt.seed, "root seed")->required();
    eg->add_option("--budget", eg_opt.budget, "search budget per graph");
    eg->add_option("--out", eg_opt.out_path, "output file (default stdout)");

    SweepPartiteOptions partite_opt;
    CLI::App* partite =
        sweep->add_subcommand("partite", "partite matching hypothesis across a grid");
    partite->add_option("--k", partite_opt.k, "uniformity");
    partite->add_option("--t", partite_opt.t_grid, "cluster size grid lo:hi:step");
    partite->add_option("--alpha", partite_opt.alpha_grid, "alpha grid lo:hi:step");
    partite->add_option("--beta", partite_opt.beta, "beta parameter");
    partite->add_option("--mode", partite_opt.mode, "matching or perfect");
    partite->add_option("--out", partite_opt.out_path, "output file (default stdout)");

    CLI::App* slice = app.add_subcommand("slice", "slice family experiments");
    slice->require_subcommand(1);

    SliceStatsOptions stats_opt;
    CLI::App* stats = slice->add_subcommand("stats", "probability and frequency checks");
    stats->add_option("--k", stats_opt.k, "uniformity");
    stats->add_option("--t", stats_opt.t, "cluster count");
    stats->add_option("--m", stats_opt.m, "cluster size");
    stats->add_option("--recip", stats_opt.reciprocals,
                      "density reciprocals for levels 2..k-1");
    stats->add_option("--seed", stats_opt.seed, "root seed")->required();
    stats->add_option("--samples", stats_opt.samples, "number of sampled slices");
    stats->add_option("--host", stats_opt.host_path, "host .khg for a quality report");
    stats->add_option("--d", stats_opt.d, "reduction threshold");
    stats->add_option("--eps", stats_opt.eps, "regularity tolerance");
    stats->add_option("--r", stats_opt.r, "regularity subgraph count");
    stats->add_option("--falsify-trials", stats_opt.falsify_trials,
                      "sampled falsification trials per polyad");
    stats->add_option("--out", stats_opt.out_path, "output file (default stdout)");
    stats->add_flag("--timestamps", stats_opt.timestamps, "record the generation time");

    std::string compress_path, compress_out;
    std::int64_t compress_r = 1;
    bool compress_ts = false;
    CLI::App* compress = app.add_subcommand("compress", "prune/compress pipeline trace");
    compress->add_option("file", compress_path, "input .khg file")->required();
    compress->add_option("--r", compress_r, "target matching size")->required();
    compress->add_option("--out", compress_out, "output file (default stdout)");
    compress->add_flag("--timestamps", compress_ts, "record the generation time");

    std::string gen_name, gen_out;
    std::vector<std::string> gen_args;
    CLI::App* gen = app.add_subcommand("gen", "write a named construction as .khg");
    gen->add_option("name", gen_name, "construction name")->required();
    gen->add_option("args", gen_args, "construction arguments");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    std::string verify_out;
    CLI::App* verify = app.add_subcommand("verify", "run the bundled invariant suites");
    verify->add_option("--out", verify_out, "output file (default stdout)");

    int code = exit_ok;
    analyze->callback([&] { code = cmd_analyze(analyze_path, analyze_out, analyze_ts); });
    search->callback([&] { code = cmd_search(search_opt); });
    eg->callback([&] { code = cmd_sweep_eg(eg_opt); });
    partite->callback([&] { code = cmd_sweep_partite(partite_opt); });
    stats->callback([&] { code = cmd_slice_stats(stats_opt); });
    compress->callback(
        [&] { code = cmd_compress(compress_path, compress_r, compress_out, compress_ts); });
    gen->callback([&] { code = cmd_gen(gen_name, gen_args, gen_out); });
    verify->callback([&] { code = cmd_verify(verify_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int cli_code = app.exit(e);
        return cli_code == 0 ? exit_ok : exit_input;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const invalid_query& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const capacity_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const hypothesis_violated& e) {
        std::cerr << "violated (" << e.condition << "): " << e.what() << "\n";
        return exit_violation;
    } catch (const error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return exit_violation;
    }
    return code;
}

}  // namespace hyperslice
