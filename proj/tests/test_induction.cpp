#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "sensevec/induction.hpp"
#include "support/fixtures.hpp"

using namespace sensevec;

namespace {

std::set<std::set<std::string>> member_sets(std::span<const SenseCluster> senses) {
    std::set<std::set<std::string>> sets;
    for (const auto& cluster : senses) {
        std::set<std::string> members;
        for (const auto& member : cluster.members) members.insert(member.word);
        sets.insert(std::move(members));
    }
    return sets;
}

SimilarityGraph random_graph(std::uint64_t seed, int vocab = 120, int list_len = 100) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    SimilarityGraph g(200);
    for (int w = 0; w < vocab; ++w) {
        std::vector<int> others;
        for (int n = 0; n < vocab; ++n)
            if (n != w) others.push_back(n);
        std::shuffle(others.begin(), others.end(), rng);
        std::vector<WeightedNeighbor> list;
        for (int i = 0; i < list_len; ++i)
            list.push_back({"w" + std::to_string(others[i]), weight(rng)});
        g.set_neighbors("w" + std::to_string(w), std::move(list));
    }
    return g;
}

}  // namespace

TEST_CASE("planted two-community graph induces exactly two senses") {
    auto fixture = fixtures::planted_two_community_graph();
    InductionParams params{20, 20, 5, 20, 0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        params.seed = seed;
        auto inventory = induce_inventory(fixture.graph, params,
                                          std::vector<std::string>{fixture.ambiguous});
        auto senses = inventory.senses(fixture.ambiguous);
        REQUIRE(senses.size() == 2);
        auto sets = member_sets(senses);
        CHECK(sets.contains(std::set<std::string>(fixture.community_a.begin(),
                                                  fixture.community_a.end())));
        CHECK(sets.contains(std::set<std::string>(fixture.community_b.begin(),
                                                  fixture.community_b.end())));
    }
}

TEST_CASE("k larger than N drops every cluster") {
    auto fixture = fixtures::planted_two_community_graph();
    InductionParams params{20, 20, 21, 20, 0};
    auto inventory = induce_inventory(fixture.graph, params);
    for (const auto& word : inventory.words())
        CHECK(inventory.senses(word).empty());
}

TEST_CASE("member weights equal the target's similarity scores") {
    auto fixture = fixtures::planted_two_community_graph();
    InductionParams params{20, 20, 5, 20, 3};
    auto inventory = induce_inventory(fixture.graph, params,
                                      std::vector<std::string>{fixture.ambiguous});
    auto ranked = fixture.graph.neighbors(fixture.ambiguous);
    for (const auto& cluster : inventory.senses(fixture.ambiguous)) {
        for (const auto& member : cluster.members) {
            auto it = std::find_if(ranked.begin(), ranked.end(),
                                   [&](const auto& n) { return n.word == member.word; });
            REQUIRE(it != ranked.end());
            CHECK(member.weight == it->weight);
        }
    }
}

TEST_CASE("sense ids follow decreasing cluster size") {
    SimilarityGraph g(50);
    // Target with a 4-community and a 2-community among its neighbors.
    std::vector<std::string> big{"b1", "b2", "b3", "b4"};
    std::vector<std::string> small{"s1", "s2"};
    std::vector<WeightedNeighbor> ego;
    for (const auto& m : big) ego.push_back({m, 0.9});
    for (const auto& m : small) ego.push_back({m, 0.8});
    g.set_neighbors("t", ego);
    for (const auto& m : big) {
        std::vector<WeightedNeighbor> list;
        for (const auto& peer : big)
            if (peer != m) list.push_back({peer, 0.9});
        g.set_neighbors(m, list);
    }
    for (const auto& m : small) {
        std::vector<WeightedNeighbor> list;
        for (const auto& peer : small)
            if (peer != m) list.push_back({peer, 0.9});
        g.set_neighbors(m, list);
    }
    InductionParams params{10, 10, 2, 20, 0};
    auto inventory = induce_inventory(g, params, std::vector<std::string>{"t"});
    auto senses = inventory.senses("t");
    REQUIRE(senses.size() == 2);
    CHECK(senses[0].sense_id == 0);
    CHECK(senses[0].members.size() == 4);
    CHECK(senses[1].sense_id == 1);
    CHECK(senses[1].members.size() == 2);
}

TEST_CASE("the ego never appears inside its own clusters") {
    auto g = random_graph(31);
    InductionParams params{50, 20, 2, 20, 0};
    auto inventory = induce_inventory(g, params);
    for (const auto& word : inventory.words())
        for (const auto& cluster : inventory.senses(word))
            for (const auto& member : cluster.members) CHECK(member.word != word);
}

TEST_CASE("induction is deterministic across thread counts") {
    auto g = random_graph(63);
    InductionParams params{60, 30, 3, 20, 17};
    auto a = induce_inventory(g, params, std::nullopt, 1);
    auto b = induce_inventory(g, params, std::nullopt, 8);
    CHECK(a == b);
}

TEST_CASE("a smaller k keeps a superset of clusters") {
    auto g = random_graph(64);
    InductionParams coarse{60, 60, 15, 20, 9};
    InductionParams fine = coarse;
    fine.min_cluster_size = 5;
    auto coarse_inv = induce_inventory(g, coarse);
    auto fine_inv = induce_inventory(g, fine);
    for (const auto& word : coarse_inv.words()) {
        auto coarse_sets = member_sets(coarse_inv.senses(word));
        auto fine_sets = member_sets(fine_inv.senses(word));
        for (const auto& cluster : coarse_sets) CHECK(fine_sets.contains(cluster));
    }
}

TEST_CASE("words absent from the graph get empty entries") {
    auto fixture = fixtures::planted_two_community_graph();
    InductionParams params{20, 20, 5, 20, 0};
    auto inventory = induce_inventory(fixture.graph, params,
                                      std::vector<std::string>{"w", "not-in-graph"});
    CHECK(inventory.contains("not-in-graph"));
    CHECK(inventory.senses("not-in-graph").empty());
}

TEST_CASE("higher connectivity with higher k yields no more senses per word") {
    // Aggregate over 20 random graphs: (n=50,k=5) is at least as granular
    // as (n=200,k=15).
    double coarse_total = 0.0;
    double fine_total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_graph(seed);
        InductionParams coarse{200, 200, 15, 20, 1};
        InductionParams fine{200, 50, 5, 20, 1};
        auto coarse_inv = induce_inventory(g, coarse);
        auto fine_inv = induce_inventory(g, fine);
        coarse_total += static_cast<double>(coarse_inv.sense_count()) /
                        static_cast<double>(coarse_inv.word_count());
        fine_total += static_cast<double>(fine_inv.sense_count()) /
                      static_cast<double>(fine_inv.word_count());
    }
    CHECK(fine_total / 20.0 >= coarse_total / 20.0);
}

TEST_CASE("inventory round-trips through the TSV format") {
    fixtures::TempDir dir("inv");
    auto g = random_graph(77, 60, 40);
    InductionParams params{40, 20, 3, 20, 5};
    auto inventory = induce_inventory(g, params);
    inventory.save(dir.file("inv.tsv"));
    auto back = SenseInventory::load(dir.file("inv.tsv"));
    CHECK(back == inventory);
    CHECK(back.is_external());
}

TEST_CASE("inventory parsing") {
    fixtures::TempDir dir("inv");
    SUBCASE("minimal entry") {
        std::ofstream(dir.file("i.tsv")) << "table\t0\tchair:0.9,desk:0.8\n";
        auto inv = SenseInventory::load(dir.file("i.tsv"));
        auto senses = inv.senses("table");
        REQUIRE(senses.size() == 1);
        REQUIRE(senses[0].members.size() == 2);
        CHECK(senses[0].members[0].word == "chair");
        CHECK(senses[0].members[0].weight == 0.9);
    }
    SUBCASE("duplicate sense id is rejected") {
        std::ofstream(dir.file("i.tsv"))
            << "table\t0\tchair:0.9\ntable\t0\tdesk:0.8\n";
        CHECK_THROWS_AS(SenseInventory::load(dir.file("i.tsv")), ParseError);
    }
    SUBCASE("malformed member list is rejected") {
        std::ofstream(dir.file("i.tsv")) << "table\t0\tchair-no-weight\n";
        CHECK_THROWS_AS(SenseInventory::load(dir.file("i.tsv")), ParseError);
    }
    SUBCASE("clusters below any k are accepted from files") {
        std::ofstream(dir.file("i.tsv")) << "table\t0\tchair:0.9\n";
        auto inv = SenseInventory::load(dir.file("i.tsv"));
        CHECK(inv.senses("table").size() == 1);
        CHECK(inv.is_external());
    }
}
