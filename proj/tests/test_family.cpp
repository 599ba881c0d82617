// Tests for labelled partition families, slices, refinements, and the
// one-sided subsampling statistics.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyperslice/family.hpp"
#include "hyperslice/generators.hpp"
#include "hyperslice/rng.hpp"

using namespace hyperslice;

namespace {

// Canonical text form of a slice's label choices.  Keys coincide across all
// slices of one family, so the label sequence identifies the slice.
std::string slice_sig(const Slice& s) {
    std::string out;
    for (const auto& lv : s.chosen)
        for (const auto& [clusters, label] : lv) {
            (void)clusters;
            out += std::to_string(label);
            out += ';';
        }
    return out;
}

}  // namespace

TEST_CASE("slice probability is the closed product over levels") {
    const auto dv2 = make_density_vector(3, {2});
    PartitionFamily f4 = random_family(3, 4, 2, dv2, 101);
    Slice s = sample_slice(f4, 1);
    REQUIRE(slice_probability(f4, s) == rational(1, 64));

    PartitionFamily f3 = random_family(3, 3, 2, dv2, 102);
    REQUIRE(slice_probability(f3, sample_slice(f3, 2)) == rational(1, 8));

    PartitionFamily f1 = random_family(3, 4, 2, make_density_vector(3, {1}), 103);
    REQUIRE(slice_probability(f1, sample_slice(f1, 3)) == 1);

    PartitionFamily g = random_family(4, 4, 2, make_density_vector(4, {2, 2}), 104);
    // six cluster pairs and four cluster triples, each halving
    REQUIRE(slice_probability(g, sample_slice(g, 4)) == rational(1, 1024));
}

TEST_CASE("slice enumeration is exhaustive, distinct, and sums to one") {
    const auto dv2 = make_density_vector(3, {2});
    PartitionFamily f = random_family(3, 3, 2, dv2, 201);
    std::vector<Slice> all = enumerate_slices(f);
    REQUIRE(all.size() == 8);

    std::set<std::string> sigs;
    rational total = 0;
    for (const Slice& s : all) {
        sigs.insert(slice_sig(s));
        total += slice_probability(f, s);
    }
    REQUIRE(sigs.size() == 8);
    REQUIRE(total == 1);

    // Sampling lands inside the enumeration and is seed-deterministic.
    Slice a = sample_slice(f, 77);
    Slice b = sample_slice(f, 77);
    REQUIRE(slice_sig(a) == slice_sig(b));
    REQUIRE(sigs.count(slice_sig(a)) == 1);

    // Larger label alphabet.
    PartitionFamily f3 = random_family(3, 4, 1, make_density_vector(3, {3}), 202);
    std::vector<Slice> all3 = enumerate_slices(f3);
    REQUIRE(all3.size() == 729);
    rational total3 = 0;
    std::set<std::string> sigs3;
    for (const Slice& s : all3) {
        sigs3.insert(slice_sig(s));
        total3 += slice_probability(f3, s);
    }
    REQUIRE(sigs3.size() == 729);
    REQUIRE(total3 == 1);

    // Unit densities leave a single all-ones slice.
    PartitionFamily f1 = random_family(3, 3, 2, make_density_vector(3, {1}), 203);
    std::vector<Slice> only = enumerate_slices(f1);
    REQUIRE(only.size() == 1);
    for (const auto& [clusters, label] : only[0].chosen[0]) {
        (void)clusters;
        REQUIRE(label == 1);
    }
    REQUIRE(slice_sig(sample_slice(f1, 9)) == slice_sig(only[0]));
}

TEST_CASE("sampled slice labels are uniform within three sigma") {
    PartitionFamily f = random_family(3, 3, 2, make_density_vector(3, {2}), 301);
    const int trials = 10000;
    std::map<Edge, int> ones;
    for (int i = 0; i < trials; ++i) {
        Slice s = sample_slice(f, derive_seed(4242, static_cast<std::uint64_t>(i)));
        for (const auto& [clusters, label] : s.chosen[0])
            if (label == 1) ++ones[clusters];
    }
    REQUIRE(ones.size() == 3);
    // p = 1/2 per label, sigma = sqrt(p(1-p)/N) = 0.005
    for (const auto& [clusters, cnt] : ones) {
        (void)clusters;
        double freq = static_cast<double>(cnt) / trials;
        REQUIRE(std::abs(freq - 0.5) <= 0.015);
    }
}

TEST_CASE("slice complex keeps exactly the matching partite sets") {
    PartitionFamily f = random_family(3, 3, 2, make_density_vector(3, {2}), 401);
    Slice s = sample_slice(f, 5);
    Complex c = slice_complex(f, s);
    REQUIRE(c.k == 2);
    REQUIRE(c.n == 6);
    REQUIRE(c.levels[0] == std::vector<Edge>{{}});
    REQUIRE(c.levels[1].size() == 6);
    for_each_subset(6, 2, [&](const Edge& pair) {
        bool expect = is_partite_set(pair, f.ground) &&
                      f.label_of(pair) == s.choice(index_of(pair, f.ground));
        REQUIRE(c.has(pair) == expect);
        REQUIRE(slice_contains(f, s, pair) == expect);
    });

    // Four clusters of one vertex each at uniformity four: triples enter the
    // complex only when all three pair labels and the triple label match.
    PartitionFamily g = random_family(4, 4, 1, make_density_vector(4, {2, 2}), 402);
    Slice gs = sample_slice(g, 6);
    Complex gc = slice_complex(g, gs);
    REQUIRE(gc.k == 3);
    for_each_subset(4, 3, [&](const Edge& tri) {
        bool expect = true;
        for_each_subset_of(tri, 2, [&](const Edge& pair) {
            if (g.label_of(pair) != gs.choice(index_of(pair, g.ground))) expect = false;
        });
        if (g.label_of(tri) != gs.choice(index_of(tri, g.ground))) expect = false;
        REQUIRE(gc.has(tri) == expect);
    });
}

TEST_CASE("cells split every polyad into the label classes") {
    PartitionFamily f = random_family(3, 3, 4, make_density_vector(3, {2}), 501);
    // Key layout: touched clusters, -1, then the labels of all subsets.
    std::map<std::vector<int>, std::set<int>> labels_on_polyad;
    for (const auto& [pair, label] : f.labels[0]) {
        std::vector<int> key = index_of(pair, f.ground);
        key.push_back(-1);
        key.push_back(label);
        REQUIRE(f.cell_key(pair) == key);
        REQUIRE(label >= 1);
        REQUIRE(label <= 2);
        key.pop_back();
        labels_on_polyad[key].insert(label);
    }
    // Every cluster pair supports exactly 1/d_2 = 2 cells here (16 pairs per
    // polyad under this seed leave no label class empty).
    REQUIRE(labels_on_polyad.size() == 3);
    for (const auto& [key, seen] : labels_on_polyad) {
        (void)key;
        REQUIRE(seen == std::set<int>{1, 2});
    }

    // At uniformity four the key also carries the pair labels, so two triples
    // share a cell exactly when they sit on the same polyad with equal label.
    PartitionFamily g = random_family(4, 4, 2, make_density_vector(4, {2, 2}), 502);
    for (const auto& [tri, label] : g.labels[1]) {
        std::vector<int> key = index_of(tri, g.ground);
        key.push_back(-1);
        for_each_subset_of(tri, 2, [&](const Edge& pair) { key.push_back(g.label_of(pair)); });
        key.push_back(label);
        REQUIRE(g.cell_key(tri) == key);
    }
}

TEST_CASE("family and density vector validation") {
    REQUIRE_THROWS_AS(make_density_vector(3, {}), invalid_query);
    REQUIRE_THROWS_AS(make_density_vector(3, {0}), invalid_query);
    REQUIRE_THROWS_AS(make_density_vector(1, {}), invalid_query);
    REQUIRE_THROWS_AS(random_family(2, 3, 2, make_density_vector(3, {2}), 1), invalid_query);
    REQUIRE_THROWS_AS(random_family(3, 0, 2, make_density_vector(3, {2}), 1), invalid_query);

    PartitionFamily f = random_family(3, 3, 2, make_density_vector(3, {2}), 601);
    REQUIRE_THROWS_AS(f.label_of({0}), invalid_query);
    REQUIRE_THROWS_AS(f.label_of({0, 1}), invalid_query);  // same cluster
    REQUIRE(f.label_of({0, 2}) >= 1);

    // Uniformity two has no labelled levels: one empty slice of probability 1.
    PartitionFamily h = random_family(2, 3, 2, make_density_vector(2, {}), 602);
    std::vector<Slice> hs = enumerate_slices(h);
    REQUIRE(hs.size() == 1);
    REQUIRE(slice_probability(h, hs[0]) == 1);
    Complex hc = slice_complex(h, hs[0]);
    REQUIRE(hc.k == 1);
    REQUIRE(hc.levels[1].size() == 6);
}

TEST_CASE("foreign or tampered slices are rejected") {
    const auto dv2 = make_density_vector(3, {2});
    PartitionFamily f3 = random_family(3, 3, 2, dv2, 701);
    PartitionFamily f4 = random_family(3, 4, 2, dv2, 702);
    Slice s4 = sample_slice(f4, 1);
    REQUIRE_THROWS_AS(slice_probability(f3, s4), invalid_query);
    REQUIRE_THROWS_AS(slice_complex(f3, s4), invalid_query);

    Slice bad = sample_slice(f3, 2);
    bad.chosen[0].begin()->second = 3;  // label above the alphabet
    REQUIRE_THROWS_AS(require_slice_of(f3, bad), invalid_query);

    Slice missing = sample_slice(f3, 3);
    missing.chosen[0].erase(missing.chosen[0].begin());
    REQUIRE_THROWS_AS(require_slice_of(f3, missing), invalid_query);

    Slice wrongk = sample_slice(f3, 4);
    wrongk.k = 4;
    REQUIRE_THROWS_AS(require_slice_of(f3, wrongk), invalid_query);
}

TEST_CASE("refinement with factor one is the identity") {
    PartitionFamily f = random_family(3, 3, 4, make_density_vector(3, {2}), 801);
    PartitionFamily same = random_refinement(f, 1, 99);
    REQUIRE(same.ground == f.ground);
    REQUIRE(same.labels == f.labels);
    REQUIRE(same.same_shape(f));
    REQUIRE(generated_from_check(same, f));
}

TEST_CASE("random refinement yields a generated family") {
    PartitionFamily f = random_family(3, 3, 4, make_density_vector(3, {2}), 901);
    PartitionFamily fine = random_refinement(f, 2, 902);
    REQUIRE(fine.t() == 6);
    REQUIRE(fine.m() == 2);
    REQUIRE(generated_from_check(fine, f));
    REQUIRE_FALSE(generated_from_check(f, fine));

    // Old-partite sets keep their labels verbatim.
    for (const auto& [pair, label] : f.labels[0]) REQUIRE(fine.label_of(pair) == label);

    // Flipping a single inherited label breaks the generated-from relation.
    PartitionFamily tampered = fine;
    for (auto& [pair, label] : tampered.labels[0])
        if (is_partite_set(pair, f.ground)) {
            label = label % 2 + 1;
            break;
        }
    REQUIRE_FALSE(generated_from_check(tampered, f));

    REQUIRE_THROWS_AS(random_refinement(f, 3, 1), invalid_query);  // 4 % 3 != 0
    REQUIRE_THROWS_AS(random_refinement(f, 0, 1), invalid_query);
}

TEST_CASE("subsampling a complete host never moves the density") {
    PartiteGraph b = complete_partite({4, 4}, 2);
    SubsampleReport rep = subset_density_test(b.graph, b.parts, 2, rational(1, 100), 50, 31);
    REQUIRE(rep.base_density == 1);
    REQUIRE(rep.trials == 50);
    REQUIRE(rep.within == 50);
    REQUIRE(rep.empirical == 1.0);
}

TEST_CASE("subsampling with factor one is exact") {
    Rng rng(derive_seed(2024, 41));
    std::vector<Edge> edges;
    for (int u = 0; u < 6; ++u)
        for (int v = 6; v < 12; ++v)
            if (rng.bernoulli(1, 2)) edges.push_back({u, v});
    KGraph b = make_kgraph(2, 12, std::move(edges));
    GroundPartition parts = contiguous_partition(2, 6);
    SubsampleReport rep = subset_density_test(b, parts, 1, rational(1, 1000000), 20, 32);
    REQUIRE(rep.within == 20);
}

TEST_CASE("subsampling report carries the analytic bound") {
    Rng rng(derive_seed(2024, 42));
    std::vector<Edge> edges;
    for (int u = 0; u < 16; ++u)
        for (int v = 16; v < 24; ++v)
            if (rng.bernoulli(1, 2)) edges.push_back({u, v});
    KGraph b = make_kgraph(2, 24, std::move(edges));
    GroundPartition parts = make_partition(
        2, [] {
            std::vector<int> po(24, 0);
            for (int v = 16; v < 24; ++v) po[static_cast<std::size_t>(v)] = 1;
            return po;
        }());
    SubsampleReport rep = subset_density_test(b, parts, 2, rational(1, 5), 400, 33);
    REQUIRE(rep.trials == 400);
    REQUIRE(rep.within <= 400);
    REQUIRE(rep.base_density >= 0);
    REQUIRE(rep.base_density <= 1);
    REQUIRE(rep.empirical >= rep.analytic_lower_bound);
}

TEST_CASE("subsampling validates its inputs") {
    PartiteGraph b = complete_partite({4, 4}, 2);
    REQUIRE_THROWS_AS(subset_density_test(b.graph, b.parts, 3, rational(1, 10), 5, 1),
                      invalid_query);
    REQUIRE_THROWS_AS(subset_density_test(b.graph, b.parts, 2, rational(0), 5, 1), invalid_query);
    REQUIRE_THROWS_AS(
        subset_density_test(b.graph, contiguous_partition(4, 2), 2, rational(1, 10), 5, 1),
        invalid_query);
    KGraph slanted = make_kgraph(2, 4, {{0, 1}});
    REQUIRE_THROWS_AS(
        subset_density_test(slanted, contiguous_partition(2, 2), 1, rational(1, 10), 5, 1),
        invalid_query);
}
