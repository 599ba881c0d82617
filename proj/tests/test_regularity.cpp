// Tests for relative densities, the regularity falsifier, reduced graphs,
// pattern densities, rooted densities, entropy, and the slice quality report.
#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <utility>
#include <vector>

#include "hyperslice/family.hpp"
#include "hyperslice/generators.hpp"
#include "hyperslice/regularity.hpp"
#include "hyperslice/rng.hpp"

using namespace hyperslice;

namespace {

// Reference clique statistics computed from scratch: i-sets all of whose
// (i-1)-subsets are edges of `sub`, counted alongside the ones that are
// edges of h.  Deliberately avoids the library's falsifier internals.
std::pair<std::uint64_t, std::uint64_t> clique_stats(const KGraph& sub, const KGraph& h,
                                                     const GroundPartition* partite) {
    std::uint64_t cnt = 0, hit = 0;
    for_each_subset(sub.n, h.k, [&](const Edge& s) {
        if (partite && !is_partite_set(s, *partite)) return;
        for (int d = 0; d < h.k; ++d) {
            Edge sb = s;
            sb.erase(sb.begin() + d);
            if (!sub.has_edge(sb)) return;
        }
        ++cnt;
        if (h.has_edge(s)) ++hit;
    });
    return {cnt, hit};
}

RegularityStatus brute_force_r1(const KGraph& h, const KGraph& base,
                                const GroundPartition* partite, const rational& d,
                                const rational& eps) {
    const auto [total, thit] = clique_stats(base, h, partite);
    (void)thit;
    const int m = static_cast<int>(base.edge_count());
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        std::vector<Edge> es;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) es.push_back(base.edges[static_cast<std::size_t>(e)]);
        KGraph sub = make_kgraph(base.k, base.n, std::move(es));
        const auto [cnt, hit] = clique_stats(sub, h, partite);
        if (rational(cnt) <= eps * rational(total)) continue;
        if (rational_abs(rational(hit, cnt) - d) > eps) return RegularityStatus::Falsified;
    }
    return RegularityStatus::ExactlyRegular;
}

RegularityStatus brute_force_r2(const KGraph& h, const KGraph& base, const rational& d,
                                const rational& eps) {
    const auto [total, thit] = clique_stats(base, h, nullptr);
    (void)thit;
    const int m = static_cast<int>(base.edge_count());
    const std::uint64_t subgraphs = std::uint64_t(1) << m;
    std::vector<std::vector<Edge>> cliques_of(subgraphs);
    for (std::uint64_t mask = 0; mask < subgraphs; ++mask) {
        std::vector<Edge> es;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) es.push_back(base.edges[static_cast<std::size_t>(e)]);
        KGraph sub = make_kgraph(base.k, base.n, std::move(es));
        for_each_subset(base.n, h.k, [&](const Edge& s) {
            for (int dd = 0; dd < h.k; ++dd) {
                Edge sb = s;
                sb.erase(sb.begin() + dd);
                if (!sub.has_edge(sb)) return;
            }
            cliques_of[mask].push_back(s);
        });
    }
    for (std::uint64_t m1 = 0; m1 < subgraphs; ++m1)
        for (std::uint64_t m2 = m1; m2 < subgraphs; ++m2) {
            std::set<Edge> un(cliques_of[m1].begin(), cliques_of[m1].end());
            un.insert(cliques_of[m2].begin(), cliques_of[m2].end());
            const std::uint64_t cnt = un.size();
            if (rational(cnt) <= eps * rational(total)) continue;
            std::uint64_t hit = 0;
            for (const Edge& s : un)
                if (h.has_edge(s)) ++hit;
            if (rational_abs(rational(hit, cnt) - d) > eps) return RegularityStatus::Falsified;
        }
    return RegularityStatus::ExactlyRegular;
}

// Replays a falsification witness from first principles and checks that it
// qualifies and violates the density band.
void check_witness(const RegularityWitness& w, const KGraph& h, const KGraph& base,
                   const GroundPartition* partite, const RegularityParams& prm) {
    REQUIRE(static_cast<int>(w.parts.size()) == prm.r);
    std::set<Edge> un;
    for (const auto& part : w.parts) {
        std::vector<Edge> es;
        for (std::size_t idx : part) es.push_back(base.edges[idx]);
        KGraph sub = make_kgraph(base.k, base.n, std::move(es));
        for_each_subset(base.n, h.k, [&](const Edge& s) {
            if (partite && !is_partite_set(s, *partite)) return;
            for (int d = 0; d < h.k; ++d) {
                Edge sb = s;
                sb.erase(sb.begin() + d);
                if (!sub.has_edge(sb)) return;
            }
            un.insert(s);
        });
    }
    const std::uint64_t cnt = un.size();
    std::uint64_t hit = 0;
    for (const Edge& s : un)
        if (h.has_edge(s)) ++hit;
    const auto [total, thit] = clique_stats(base, h, partite);
    (void)thit;
    REQUIRE(w.cliques == cnt);
    REQUIRE(rational(cnt) > prm.eps * rational(total));
    REQUIRE(w.density == rational(hit, cnt));
    REQUIRE(rational_abs(w.density - prm.d) > prm.eps);
}

// Partition family with round-robin clusters, unit densities, and every
// partite set labelled 1; its unique slice keeps all partite sets.
PartitionFamily unit_family(int k, int t, int n) {
    PartitionFamily f;
    f.k = k;
    f.ground = round_robin_partition(t, n);
    f.dv = make_density_vector(k, std::vector<std::uint64_t>(static_cast<std::size_t>(k - 2), 1));
    f.labels.resize(static_cast<std::size_t>(k - 2));
    for (int i = 2; i <= k - 1; ++i)
        for_each_subset(n, i, [&](const Edge& s) {
            if (is_partite_set(s, f.ground))
                f.labels[static_cast<std::size_t>(i) - 2].emplace(s, 1);
        });
    return f;
}

KGraph single_edge_pattern(int k) {
    Edge e;
    for (int v = 0; v < k; ++v) e.push_back(v);
    return make_kgraph(k, k, {e});
}

}  // namespace

TEST_CASE("relative density over a base") {
    // Complete bipartite support on {0,1} x {2,3}, given by singleton edges.
    KGraph base = make_kgraph(1, 4, {{0}, {1}, {2}, {3}});
    GroundPartition two = contiguous_partition(2, 2);
    KGraph h = make_kgraph(2, 4, {{0, 2}, {1, 3}});
    REQUIRE(relative_density(h, base, &two) == rational(1, 2));

    KGraph all = make_kgraph(2, 4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    REQUIRE(relative_density(all, base, &two) == 1);

    KGraph nobase = make_kgraph(1, 4, {});
    REQUIRE(relative_density(h, nobase, &two) == 0);

    REQUIRE_THROWS_AS(relative_density(h, h), invalid_query);
    Capacity tiny;
    tiny.max_sets = 2;
    REQUIRE_THROWS_AS(cliques_over(base, nullptr, tiny), capacity_exceeded);
}

TEST_CASE("exhaustive falsification on the bipartite fixture") {
    KGraph base = make_kgraph(1, 4, {{0}, {1}, {2}, {3}});
    GroundPartition two = contiguous_partition(2, 2);
    KGraph h = make_kgraph(2, 4, {{0, 2}, {1, 3}});

    // At eps = 1/4 the strict qualification needs more than one supported
    // pair, and every such subgraph has density exactly 1/2.
    RegularityVerdict reg =
        regularity_falsify(h, base, {rational(1, 2), rational(1, 4), 1}, FalsifyMode::Exhaustive(), &two);
    REQUIRE(reg.status == RegularityStatus::ExactlyRegular);
    REQUIRE_FALSE(reg.witness.has_value());

    // At eps = 1/5 a single supported pair qualifies; {0},{2} has density 1.
    RegularityParams prm{rational(1, 2), rational(1, 5), 1};
    RegularityVerdict bad = regularity_falsify(h, base, prm, FalsifyMode::Exhaustive(), &two);
    REQUIRE(bad.status == RegularityStatus::Falsified);
    REQUIRE(bad.witness.has_value());
    REQUIRE(bad.witness->parts == std::vector<std::vector<std::size_t>>{{0, 2}});
    REQUIRE(bad.witness->cliques == 1);
    REQUIRE(bad.witness->density == 1);
    check_witness(*bad.witness, h, base, &two, prm);

    // The full clique set at its own density is exactly regular.
    KGraph all = make_kgraph(2, 4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    RegularityVerdict full =
        regularity_falsify(all, base, {rational(1), rational(1, 10), 1}, FalsifyMode::Exhaustive(), &two);
    REQUIRE(full.status == RegularityStatus::ExactlyRegular);
}

TEST_CASE("exhaustive falsification agrees with brute force") {
    for (int inst = 0; inst < 8; ++inst) {
        const std::uint64_t seed = derive_seed(88, static_cast<std::uint64_t>(inst));
        KGraph base = random_kgraph(5, 2, rational(1, 2), derive_seed(seed, 0));
        KGraph h = random_kgraph(5, 3, rational(1, 2), derive_seed(seed, 1));
        const rational d = relative_density(h, base);
        for (const rational& eps : {rational(1, 8), rational(1, 3)}) {
            RegularityParams prm{d, eps, 1};
            RegularityVerdict v = regularity_sweep(h, base, prm);
            REQUIRE(v.status == brute_force_r1(h, base, nullptr, d, eps));
            if (v.status == RegularityStatus::Falsified)
                check_witness(*v.witness, h, base, nullptr, prm);
        }
    }
}

TEST_CASE("pair sweeps agree with brute force") {
    KGraph raw = random_kgraph(5, 2, rational(1, 3), derive_seed(89, 0));
    std::vector<Edge> es(raw.edges.begin(),
                         raw.edges.begin() + std::min<std::size_t>(raw.edges.size(), 6));
    KGraph base = make_kgraph(2, 5, std::move(es));
    KGraph h = random_kgraph(5, 3, rational(1, 2), derive_seed(89, 1));
    const rational d = relative_density(h, base);
    const rational eps(1, 6);
    RegularityParams prm{d, eps, 2};
    RegularityVerdict v = regularity_sweep(h, base, prm);
    REQUIRE(v.status == brute_force_r2(h, base, d, eps));
    if (v.status == RegularityStatus::Falsified) check_witness(*v.witness, h, base, nullptr, prm);
}

TEST_CASE("sampled falsification") {
    KGraph base = make_kgraph(1, 4, {{0}, {1}, {2}, {3}});
    GroundPartition two = contiguous_partition(2, 2);
    KGraph h = make_kgraph(2, 4, {{0, 2}, {1, 3}});

    // The regular band at eps = 1/4 cannot be falsified, so sampling reports
    // only the budget it spent.
    RegularityVerdict ok = regularity_falsify(h, base, {rational(1, 2), rational(1, 4), 1},
                                              FalsifyMode::Sampled(50, 11), &two);
    REQUIRE(ok.status == RegularityStatus::NotFalsified);
    REQUIRE(ok.inspected == 50);
    REQUIRE_FALSE(ok.witness.has_value());

    // Determinism: the same seed inspects the same tuples.
    RegularityVerdict again = regularity_falsify(h, base, {rational(1, 2), rational(1, 4), 1},
                                                 FalsifyMode::Sampled(50, 11), &two);
    REQUIRE(again.status == ok.status);
    REQUIRE(again.inspected == ok.inspected);

    // At eps = 1/5 violating subgraphs make up a constant fraction of the
    // pool, so this budget finds one.
    RegularityParams prm{rational(1, 2), rational(1, 5), 1};
    RegularityVerdict bad = regularity_falsify(h, base, prm, FalsifyMode::Sampled(200, 12), &two);
    REQUIRE(bad.status == RegularityStatus::Falsified);
    check_witness(*bad.witness, h, base, &two, prm);
}

TEST_CASE("sweep capacity guards") {
    std::vector<Edge> singles;
    for (int v = 0; v < 21; ++v) singles.push_back({v});
    KGraph base = make_kgraph(1, 21, std::move(singles));
    KGraph h = make_kgraph(2, 21, {{0, 1}});
    REQUIRE_THROWS_AS(regularity_sweep(h, base, {rational(1, 2), rational(1, 4), 1}),
                      capacity_exceeded);
    Capacity small;
    small.max_sets = 1000;
    REQUIRE_THROWS_AS(
        regularity_sweep(h, base, {rational(1, 2), rational(1, 4), 1}, nullptr, 25, small),
        capacity_exceeded);
    REQUIRE_THROWS_AS(regularity_sweep(h, base, {rational(1, 2), rational(1, 4), 0}),
                      invalid_query);
}

TEST_CASE("weighted reduced graph of a tight cycle") {
    KGraph c6 = tight_cycle_kgraph(6, 3);
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);

    // Within clusters {0,3},{1,4},{2,5} all eight transversal triples are
    // supported and six of them are cycle edges.
    KGraph polyad = polyad_graph(slice_complex(f, s), f.ground, {0, 1, 2});
    REQUIRE(polyad.edge_count() == 12);
    WeightedReducedGraph rw = weighted_reduced(c6, f, s);
    REQUIRE(rw.t == 3);
    REQUIRE(rw.weight_of({0, 1, 2}) == rational(3, 4));
    REQUIRE_THROWS_AS(rw.weight_of({0, 1, 3}), invalid_query);

    WeightedReducedGraph full = weighted_reduced(complete_kgraph(6, 3), f, s);
    REQUIRE(full.weight_of({0, 1, 2}) == 1);
    WeightedReducedGraph none = weighted_reduced(empty_kgraph(3, 6), f, s);
    REQUIRE(none.weight_of({0, 1, 2}) == 0);

    REQUIRE_THROWS_AS(weighted_reduced(complete_kgraph(5, 3), f, s), invalid_query);
}

TEST_CASE("thresholded reduction keeps regular dense cluster sets") {
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);

    // Complete host: weight 1, exactly regular, kept at any threshold <= 1.
    ReducedGraph full = d_reduced(complete_kgraph(6, 3), f, s, rational(1, 2), rational(1, 4), 1, 0, 1);
    REQUIRE(full.graph.edges == std::vector<Edge>{{0, 1, 2}});
    REQUIRE(full.irregular.empty());
    REQUIRE(full.swept == 1);
    REQUIRE(full.sampled == 0);

    // Empty host: weight 0, exactly regular, dropped for any positive d.
    ReducedGraph none = d_reduced(empty_kgraph(3, 6), f, s, rational(1, 2), rational(1, 4), 1, 0, 1);
    REQUIRE(none.graph.edge_count() == 0);
    REQUIRE(none.irregular.empty());
    REQUIRE(none.weight.at({0, 1, 2}) == 0);

    // The cycle at eps = 2/5: every qualifying subgraph needs at least four
    // of the eight transversal triples, only two of which are non-edges, so
    // densities stay within 1/4 of the weight 3/4 and the set is kept.
    ReducedGraph kept = d_reduced(tight_cycle_kgraph(6, 3), f, s, rational(1, 2), rational(2, 5), 1, 0, 1);
    REQUIRE(kept.graph.edges == std::vector<Edge>{{0, 1, 2}});
    REQUIRE(kept.irregular.empty());
    REQUIRE(kept.weight.at({0, 1, 2}) == rational(3, 4));

    // At eps = 1/4 the three pairs under each transversal non-edge plus one
    // cycle edge qualify with density 1/3, falsifying regularity.
    ReducedGraph dropped =
        d_reduced(tight_cycle_kgraph(6, 3), f, s, rational(1, 2), rational(1, 4), 1, 0, 1);
    REQUIRE(dropped.graph.edge_count() == 0);
    REQUIRE(dropped.irregular == std::vector<Edge>{{0, 1, 2}});
}

TEST_CASE("pattern density fixtures") {
    KGraph edge3 = single_edge_pattern(3);
    REQUIRE(h_density(complete_kgraph(5, 3), edge3) == 1);
    KGraph c6 = tight_cycle_kgraph(6, 3);
    REQUIRE(h_density(c6, edge3) == rational(3, 10));  // 6 edges over C(6,3)

    // Two overlapping edges: a tight path on four vertices.  Embeddings of
    // the path into itself: identity and reversal, each composable with the
    // swap of the two shared middle vertices, so four in total.
    KGraph path = tight_path_kgraph(4, 3);
    REQUIRE(h_density(path, path) == rational(4, 24));

    REQUIRE_THROWS_AS(h_density(tight_path_kgraph(3, 3), c6), invalid_query);
}

TEST_CASE("weighted and thresholded pattern densities coincide on 0/1 weights") {
    KGraph path = tight_path_kgraph(4, 3);
    KGraph edge3 = single_edge_pattern(3);
    for (int trial = 0; trial < 5; ++trial) {
        KGraph r = random_kgraph(5, 3, rational(1, 2), derive_seed(90, static_cast<std::uint64_t>(trial)));
        WeightedReducedGraph w01;
        w01.t = 5;
        w01.k = 3;
        for_each_subset(5, 3, [&](const Edge& x) {
            w01.weight[x] = r.has_edge(x) ? rational(1) : rational(0);
        });
        REQUIRE(h_density(w01, edge3) == h_density(r, edge3));
        REQUIRE(h_density(w01, path) == h_density(r, path));
    }
}

TEST_CASE("restriction and induced subgraphs relabel locally") {
    WeightedReducedGraph rw;
    rw.t = 4;
    rw.k = 3;
    int v = 0;
    for_each_subset(4, 3, [&](const Edge& x) { rw.weight[x] = rational(++v, 10); });
    WeightedReducedGraph sub = restrict_reduced(rw, {0, 1, 3});
    REQUIRE(sub.t == 3);
    REQUIRE(sub.weight.size() == 1);
    REQUIRE(sub.weight.at({0, 1, 2}) == rw.weight.at({0, 1, 3}));

    KGraph c6 = tight_cycle_kgraph(6, 3);
    KGraph ind = induced_subgraph(c6, {0, 1, 2, 3});
    REQUIRE(ind.n == 4);
    REQUIRE(ind.edges == std::vector<Edge>{{0, 1, 2}, {1, 2, 3}});
}

TEST_CASE("relative degrees") {
    KGraph c6 = tight_cycle_kgraph(6, 3);
    Edge all{0, 1, 2, 3, 4, 5};
    REQUIRE(rel_degree({0, 1}, c6, all) == rational(1, 2));
    REQUIRE(rel_degree({0}, c6, all) == rational(3, 10));
    REQUIRE(rel_degree_mean({{0}, {3}}, c6, all) == rational(3, 10));

    WeightedReducedGraph rw;
    rw.t = 4;
    rw.k = 3;
    for_each_subset(4, 3, [&](const Edge& x) { rw.weight[x] = rational(1, 2); });
    REQUIRE(rel_degree({0}, rw, {0, 1, 2, 3}) == rational(1, 2));

    REQUIRE_THROWS_AS(rel_degree({1, 0}, c6, all), invalid_query);
    REQUIRE_THROWS_AS(rel_degree({0, 1}, c6, Edge{0, 1}), invalid_query);
    REQUIRE_THROWS_AS(rel_degree({0, 1, 2, 3}, c6, all), invalid_query);
    REQUIRE_THROWS_AS(rel_degree_mean(std::vector<Edge>{}, c6, all), invalid_query);
}

TEST_CASE("irregular proportion between a set and its extensions") {
    std::vector<Edge> irr{{0, 1, 2}};
    REQUIRE(irregular_proportion({0}, {0, 1, 2, 3}, 3, irr) == rational(1, 3));
    REQUIRE(irregular_proportion({3}, {0, 1, 2, 3}, 3, irr) == 0);
    REQUIRE(irregular_proportion({0, 1}, {0, 1, 2, 3}, 3, irr) == rational(1, 2));
    REQUIRE_THROWS_AS(irregular_proportion({0}, {0, 1}, 3, irr), invalid_query);
}

TEST_CASE("rooted densities") {
    KGraph c6 = tight_cycle_kgraph(6, 3);
    KGraph edge3 = single_edge_pattern(3);
    REQUIRE(rooted_density(c6, edge3, {{0, 0}}) == rational(3, 10));
    REQUIRE(rooted_density(c6, edge3, {}) == h_density(c6, edge3));
    REQUIRE_THROWS_AS(rooted_density(c6, edge3, {{0, 0}, {1, 0}}), invalid_query);
    REQUIRE_THROWS_AS(rooted_density(edge3, c6, {}), invalid_query);

    Complex shadow = pattern_shadow(edge3, {0});
    REQUIRE(shadow.levels[0] == std::vector<Edge>{{}});
    REQUIRE(shadow.levels[1] == std::vector<Edge>{{1}, {2}});
    REQUIRE(shadow.levels[2] == std::vector<Edge>{{1, 2}});

    // Slice-supported rooted density over round-robin clusters: the shadow
    // pair must land in two distinct clusters, leaving 16 of the 20 ordered
    // pairs, and 6 of them complete a cycle edge through vertex 0.
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);
    SliceRootedCounts cnts = slice_rooted_density(c6, f, s, edge3, {{0, 0}});
    REQUIRE(cnts.shadow_embeddings == 16);
    REQUIRE(cnts.embeddings == 6);
    REQUIRE(cnts.density == rational(3, 8));
    REQUIRE(rooted_density(c6, edge3, {{0, 0}}, f, s) == rational(3, 8));

    // A slice whose pair choices all disagree with the family supports no
    // shadow embedding at all.
    PartitionFamily g = random_family(3, 3, 1, make_density_vector(3, {2}), 91);
    Slice flipped = sample_slice(g, 1);
    for (auto& [clusters, label] : flipped.chosen[0]) {
        Edge pair{clusters[0], clusters[1]};  // one vertex per cluster
        label = 3 - g.label_of(pair);
    }
    REQUIRE_THROWS_AS(slice_rooted_density(complete_kgraph(3, 3), g, flipped, edge3, {{0, 0}}),
                      invalid_query);
}

TEST_CASE("entropy closed forms") {
    WeightedReducedGraph rw;
    rw.t = 4;
    rw.k = 3;
    for_each_subset(4, 3, [&](const Edge& x) { rw.weight[x] = rational(1, 2); });
    REQUIRE_THAT(reduced_entropy(rw), Catch::Matchers::WithinAbs(1.0, 1e-12));

    int i = 0;
    for_each_subset(4, 3, [&](const Edge& x) { rw.weight[x] = rational(i++ % 2); });
    REQUIRE_THAT(reduced_entropy(rw), Catch::Matchers::WithinAbs(0.0, 1e-12));

    i = 0;
    for_each_subset(4, 3, [&](const Edge& x) {
        rw.weight[x] = (i++ < 2) ? rational(0) : rational(1, 2);
    });
    REQUIRE_THAT(reduced_entropy(rw), Catch::Matchers::WithinAbs(0.5, 1e-12));

    WeightedReducedGraph degenerate;
    degenerate.t = 2;
    degenerate.k = 3;
    REQUIRE_THROWS_AS(reduced_entropy(degenerate), invalid_query);
}

TEST_CASE("slice quality report on the complete host") {
    KGraph g = complete_kgraph(6, 3);
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);
    KGraph edge3 = single_edge_pattern(3);
    std::vector<RootQuery> roots{{edge3, {{0, 0}}}};

    SliceQualityReport rep = slice_quality_report(g, f, s, {edge3}, {0, 1, 2}, roots,
                                                  rational(1, 2), rational(1, 4), 1, 0, 1);
    REQUIRE(rep.irregular_fraction == 0);
    REQUIRE(rep.reduced.graph.edges == std::vector<Edge>{{0, 1, 2}});
    REQUIRE(rep.patterns.size() == 1);
    REQUIRE(rep.patterns[0].weighted == 1);
    REQUIRE(rep.patterns[0].host == 1);
    REQUIRE(rep.patterns[0].discrepancy == 0);
    REQUIRE(rep.patterns[0].thresholded == 1);
    REQUIRE(rep.patterns[0].slack == rational(1, 2));
    REQUIRE(rep.degrees.size() == 6);
    for (const auto& row : rep.degrees) {
        REQUIRE(row.weighted == 1);
        REQUIRE(row.thresholded == 1);
        REQUIRE(row.zeta == 0);
        REQUIRE(row.slack == rational(1, 2));
        REQUIRE(row.host_defined);
        REQUIRE(row.host == 1);
        REQUIRE(row.discrepancy == 0);
    }
    REQUIRE(rep.roots.size() == 1);
    REQUIRE(rep.roots[0].plain == 1);
    REQUIRE(rep.roots[0].sliced == 1);
    REQUIRE(rep.roots[0].discrepancy == 0);
    REQUIRE(rep.counting.size() == 1);
    REQUIRE(rep.counting[0].cliques == 8);
    REQUIRE(rep.counting[0].deviation == 0);
    REQUIRE(rep.max_counting_deviation == 0);
}

TEST_CASE("slice quality report on the empty host") {
    KGraph g = empty_kgraph(3, 6);
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);
    KGraph edge3 = single_edge_pattern(3);

    SliceQualityReport rep = slice_quality_report(g, f, s, {edge3}, {0, 1, 2},
                                                  {{edge3, {{0, 0}}}}, rational(1, 2),
                                                  rational(1, 4), 1, 0, 1);
    REQUIRE(rep.irregular_fraction == 0);
    REQUIRE(rep.reduced.graph.edge_count() == 0);
    REQUIRE(rep.patterns[0].weighted == 0);
    REQUIRE(rep.patterns[0].host == 0);
    REQUIRE(rep.patterns[0].discrepancy == 0);
    REQUIRE(rep.patterns[0].slack == rational(1, 2));
    REQUIRE(rep.roots[0].plain == 0);
    REQUIRE(rep.roots[0].sliced == 0);
    REQUIRE(rep.roots[0].discrepancy == 0);
    REQUIRE(rep.counting[0].cliques == 8);
    REQUIRE(rep.max_counting_deviation == 0);
}

TEST_CASE("slice quality report on the tight cycle") {
    KGraph c6 = tight_cycle_kgraph(6, 3);
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);
    KGraph edge3 = single_edge_pattern(3);

    SliceQualityReport rep = slice_quality_report(c6, f, s, {edge3}, {0, 1, 2},
                                                  {{edge3, {{0, 0}}}}, rational(1, 2),
                                                  rational(2, 5), 1, 0, 1);
    REQUIRE(rep.irregular_fraction == 0);
    REQUIRE(rep.reduced.graph.edges == std::vector<Edge>{{0, 1, 2}});

    REQUIRE(rep.patterns[0].weighted == rational(3, 4));
    REQUIRE(rep.patterns[0].host == rational(3, 10));
    REQUIRE(rep.patterns[0].discrepancy == rational(9, 20));
    REQUIRE(rep.patterns[0].thresholded == 1);
    REQUIRE(rep.patterns[0].slack == rational(3, 4));

    // Rows follow lexicographic subsets: singles {0},{1},{2}, then pairs.
    for (int j = 0; j < 3; ++j) {
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].weighted == rational(3, 4));
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].host == rational(3, 10));
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].discrepancy == rational(9, 20));
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].zeta == 0);
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].slack == rational(3, 4));
    }
    for (int j = 3; j < 6; ++j) {
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].weighted == rational(3, 4));
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].host == rational(3, 8));
        REQUIRE(rep.degrees[static_cast<std::size_t>(j)].discrepancy == rational(3, 8));
    }

    REQUIRE(rep.roots[0].plain == rational(3, 10));
    REQUIRE(rep.roots[0].sliced == rational(3, 8));
    REQUIRE(rep.roots[0].discrepancy == rational(3, 40));
    REQUIRE(rep.counting[0].deviation == 0);
}

TEST_CASE("slice quality report asserts its bounds on random inputs") {
    KGraph edge3 = single_edge_pattern(3);
    for (int inst = 0; inst < 10; ++inst) {
        const std::uint64_t seed = derive_seed(92, static_cast<std::uint64_t>(inst));
        PartitionFamily f = random_family(3, 3, 2, make_density_vector(3, {2}), derive_seed(seed, 0));
        Slice s = sample_slice(f, derive_seed(seed, 1));
        KGraph g = random_kgraph(6, 3, rational(1, 2), derive_seed(seed, 2));
        const rational d = (inst % 2) ? rational(1, 4) : rational(1, 2);
        SliceQualityReport rep = slice_quality_report(g, f, s, {edge3}, {0, 1, 2}, {},
                                                      d, rational(1, 4), 1, 0, derive_seed(seed, 3));
        REQUIRE(rep.patterns.size() == 1);
        REQUIRE(rep.patterns[0].slack >= 0);
        REQUIRE(rep.degrees.size() == 6);
        for (const auto& row : rep.degrees) REQUIRE(row.slack >= 0);
        REQUIRE(rep.counting.size() == 1);
        REQUIRE(rep.irregular_fraction >= 0);
        REQUIRE(rep.irregular_fraction <= 1);
        REQUIRE(rep.max_counting_deviation >= 0);
    }
}

TEST_CASE("slice quality report validates its inputs") {
    KGraph g = complete_kgraph(6, 3);
    PartitionFamily f = unit_family(3, 3, 6);
    Slice s = sample_slice(f, 0);
    KGraph edge3 = single_edge_pattern(3);
    REQUIRE_THROWS_AS(slice_quality_report(g, f, s, {edge3}, {2, 1, 0}, {}, rational(1, 2),
                                           rational(1, 4), 1, 0, 1),
                      invalid_query);
    REQUIRE_THROWS_AS(slice_quality_report(g, f, s, {edge3}, {0, 1}, {}, rational(1, 2),
                                           rational(1, 4), 1, 0, 1),
                      invalid_query);
    REQUIRE_THROWS_AS(slice_quality_report(g, f, s, {edge3}, {0, 1, 5}, {}, rational(1, 2),
                                           rational(1, 4), 1, 0, 1),
                      invalid_query);
    KGraph edge2 = make_kgraph(2, 2, {{0, 1}});
    REQUIRE_THROWS_AS(slice_quality_report(g, f, s, {edge2}, {0, 1, 2}, {}, rational(1, 2),
                                           rational(1, 4), 1, 0, 1),
                      invalid_query);
}
