// Tests for the deterministic graph constructions and their structural
// guarantees (path and cycle bounds, level-count identities).
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hyperslice/generators.hpp"
#include "hyperslice/rng.hpp"
#include "hyperslice/tight.hpp"

using namespace hyperslice;

TEST_CASE("complete and complete partite graphs") {
    REQUIRE(complete_kgraph(5, 3).edge_count() == 10);
    REQUIRE(complete_kgraph(2, 3).edge_count() == 0);

    PartiteGraph p = complete_partite({2, 2, 2}, 3);
    REQUIRE(p.graph.edge_count() == 8);
    REQUIRE(p.parts.t == 3);
    REQUIRE(p.parts.equal_sizes());
    for (const Edge& e : p.graph.edges)
        REQUIRE(index_of(e, p.parts).size() == 3);

    REQUIRE(complete_partite({2, 3, 4}, 3).graph.edge_count() == 24);
    REQUIRE_THROWS_AS(complete_partite({2, 2}, 3), invalid_query);
    REQUIRE_THROWS_AS(complete_partite({2, 0, 2}, 3), invalid_query);
}

TEST_CASE("star graphs match their closed form") {
    KGraph s = star_kgraph(6, 3, 1);
    REQUIRE(s.edge_count() == 10);  // C(6,3) - C(5,3)
    for (const Edge& e : s.edges) REQUIRE(e.front() == 0);

    for (int n = 3; n <= 12; ++n)
        for (int a = 0; a <= 2; ++a) {
            const bigint expect = binomial(n, 3) - binomial(n - a, 3);
            REQUIRE(bigint(star_kgraph(n, 3, a).edge_count()) == expect);
        }
    REQUIRE_THROWS_AS(star_kgraph(4, 3, 5), invalid_query);
}

TEST_CASE("clique plus tail threshold") {
    KGraph g = clique_plus_kgraph(5, 3, 3, 2);
    REQUIRE(g.edges == std::vector<Edge>{{0, 1, 2}, {0, 3, 4}, {1, 3, 4}, {2, 3, 4}});
    REQUIRE(clique_plus_kgraph(5, 3, 3, 0).edge_count() == 10);
    REQUIRE_THROWS_AS(clique_plus_kgraph(5, 3, 3, 4), invalid_query);
}

TEST_CASE("parity construction keeps odd transversals") {
    ParityGraph p = parity_kgraph(2, 3, rational(1, 2));
    REQUIRE(p.graph.edges ==
            std::vector<Edge>{{0, 2, 5}, {0, 3, 4}, {1, 2, 4}, {1, 3, 5}});
    REQUIRE(p.side == std::vector<int>{0, 1, 0, 1, 0, 1});
    for (const Edge& e : p.graph.edges) {
        int parity = 0;
        for (int v : e) parity ^= p.side[static_cast<std::size_t>(v)];
        REQUIRE(parity == 1);
    }
    REQUIRE_THROWS_AS(parity_kgraph(3, 3, rational(1, 2)), invalid_query);
    REQUIRE_THROWS_AS(parity_kgraph(2, 3, rational(3, 2)), invalid_query);
}

TEST_CASE("tight cycles and paths") {
    REQUIRE(tight_cycle_kgraph(3, 3).edges == std::vector<Edge>{{0, 1, 2}});
    REQUIRE(tight_cycle_kgraph(6, 3).edge_count() == 6);
    REQUIRE_THROWS_AS(tight_cycle_kgraph(2, 3), invalid_query);

    REQUIRE(tight_path_kgraph(4, 3).edges == std::vector<Edge>{{0, 1, 2}, {1, 2, 3}});
    REQUIRE(tight_path_kgraph(2, 3).edge_count() == 0);
    REQUIRE_THROWS_AS(tight_path_kgraph(1, 3), invalid_query);
}

TEST_CASE("random graphs are seed-deterministic with binomial counts") {
    REQUIRE(random_kgraph(6, 3, rational(0), 5).edge_count() == 0);
    REQUIRE(random_kgraph(6, 3, rational(1), 5).edge_count() == 20);
    REQUIRE(random_kgraph(6, 3, rational(1, 2), 7).edges ==
            random_kgraph(6, 3, rational(1, 2), 7).edges);
    REQUIRE_THROWS_AS(random_kgraph(6, 3, rational(3, 2), 7), invalid_query);

    // 100 seeded graphs on C(6,3) = 20 sets at p = 1/2: the total edge count
    // has mean 1000 and sigma = sqrt(500), so a 3-sigma band of +-68.
    std::uint64_t total = 0;
    for (int i = 0; i < 100; ++i)
        total += random_kgraph(6, 3, rational(1, 2), derive_seed(95, static_cast<std::uint64_t>(i)))
                     .edge_count();
    REQUIRE(total >= 1000 - 68);
    REQUIRE(total <= 1000 + 68);
}

TEST_CASE("tightness complexes satisfy their level identities") {
    Complex r1 = tightness_complex(3, 1);
    REQUIRE(r1.n == 2);
    REQUIRE(level_counts(r1) == std::vector<std::uint64_t>{0, 0, 0, 0});

    Complex r2 = tightness_complex(3, 2);
    REQUIRE(r2.n == 5);
    REQUIRE(level_counts(r2) == std::vector<std::uint64_t>{1, 5, 10, 10});
    REQUIRE(matching_number(top_level(r2)) == 1);

    Complex r3 = tightness_complex(3, 3);
    REQUIRE(r3.n == 8);
    REQUIRE(level_counts(r3) == std::vector<std::uint64_t>{1, 8, 28, 56});
    REQUIRE(matching_number(top_level(r3)) == 2);

    Complex k4 = tightness_complex(4, 2);
    REQUIRE(k4.n == 7);
    REQUIRE(level_counts(k4) == std::vector<std::uint64_t>{1, 7, 21, 35, 35});

    REQUIRE_THROWS_AS(tightness_complex(1, 2), invalid_query);
    REQUIRE_THROWS_AS(tightness_complex(3, 0), invalid_query);
}

TEST_CASE("longest tight path in a star stops at the head bound") {
    // Every window of a tight path must meet the head A, so at most k-1
    // vertices fit after the last head vertex: the bound is k*a + k - 1.
    const std::uint64_t budget = 20000000;
    for (int n = 4; n <= 9; ++n)
        for (int a = 0; a <= 2; ++a) {
            KGraph s = star_kgraph(n, 3, a);
            SearchResult r = search_longest_path(s, budget);
            REQUIRE(r.status == SearchStatus::Found);
            REQUIRE(r.best_vertices == std::min(n, 3 * a + 2));
            if (r.best_vertices >= 3)
                REQUIRE(verify_tight(r.witness->vertices, s, false, true).ok);
        }
}

TEST_CASE("parity graphs have no long tight cycles") {
    const std::uint64_t budget = 20000000;

    // Two vertices per class at alpha = 1/2: nothing beyond single edges.
    ParityGraph small = parity_kgraph(2, 3, rational(1, 2));
    SearchResult none = search_longest_cycle(small.graph, budget);
    REQUIRE(none.status == SearchStatus::ExhaustiveNegative);

    // Three vertices per class at alpha = 2/3: certified bound k*alpha*n = 6.
    ParityGraph big = parity_kgraph(3, 3, rational(2, 3));
    SearchResult best = search_longest_cycle(big.graph, budget);
    REQUIRE(best.status != SearchStatus::BudgetExhausted);
    if (best.status == SearchStatus::Found) {
        REQUIRE(best.best_vertices <= 6);
        REQUIRE(verify_tight(best.witness->vertices, big.graph, true, true).ok);
    }
}

TEST_CASE("complete partite cycles only come in multiples of k") {
    KGraph g = complete_partite({2, 2, 2}, 3).graph;
    REQUIRE(search_tight_cycle(g, 4, 20000000).status == SearchStatus::ExhaustiveNegative);
    REQUIRE(search_tight_cycle(g, 5, 20000000).status == SearchStatus::ExhaustiveNegative);
    SearchResult six = search_tight_cycle(g, 6, 20000000);
    REQUIRE(six.status == SearchStatus::Found);
    REQUIRE(verify_tight(six.witness->vertices, g, true, true).ok);
}

TEST_CASE("named construction dispatch") {
    REQUIRE(construct({"complete", {"5", "3"}}).edge_count() == 10);
    REQUIRE(construct({"complete_partite", {"2", "2", "2", "3"}}).edge_count() == 8);
    REQUIRE(construct({"star", {"6", "3", "1"}}).edges == star_kgraph(6, 3, 1).edges);
    REQUIRE(construct({"clique_plus", {"5", "3", "3", "2"}}).edge_count() == 4);
    REQUIRE(construct({"parity", {"2", "3", "1/2"}}).edge_count() == 4);
    REQUIRE(construct({"tight_cycle", {"6", "3"}}).edges == tight_cycle_kgraph(6, 3).edges);
    REQUIRE(construct({"tight_path", {"4", "3"}}).edge_count() == 2);
    REQUIRE(construct({"random", {"6", "3", "1/2", "7"}}).edges ==
            random_kgraph(6, 3, rational(1, 2), 7).edges);

    REQUIRE_THROWS_AS(construct({"moebius", {"1"}}), invalid_query);
    REQUIRE_THROWS_AS(construct({"complete", {"5"}}), invalid_query);
    REQUIRE_THROWS_AS(construct({"complete", {"5", "x"}}), invalid_query);
    REQUIRE(GenSpec{"star", {"6", "3", "1"}}.describe() == "star 6 3 1");
}
