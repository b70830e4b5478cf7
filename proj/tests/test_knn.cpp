#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sensevec/knn.hpp"
#include "support/fixtures.hpp"

using namespace sensevec;

namespace {

// Direct O(V^2) reference: per-pair cosine, full sort with the same tie
// rule, truncation.
std::vector<std::vector<WeightedNeighbor>> brute_force_knn(const EmbeddingMatrix& m,
                                                           std::size_t top_n) {
    std::vector<std::vector<WeightedNeighbor>> out(m.size());
    for (std::size_t q = 0; q < m.size(); ++q) {
        std::vector<WeightedNeighbor> scored;
        for (std::size_t c = 0; c < m.size(); ++c) {
            if (c == q) continue;
            scored.push_back({m.token(c), cosine(m.row(q), m.row(c))});
        }
        std::sort(scored.begin(), scored.end(), neighbor_order);
        scored.resize(std::min(top_n, scored.size()));
        out[q] = std::move(scored);
    }
    return out;
}

}  // namespace

TEST_CASE("three words at mutual 120 degrees") {
    const float s = std::sqrt(3.0f) / 2.0f;
    EmbeddingMatrix m({"a", "b", "c"}, 2, {1.0f, 0.0f, -0.5f, s, -0.5f, -s});
    auto g = build_knn_graph(m, {2, 1000, 1});
    for (const auto& word : {"a", "b", "c"}) {
        auto list = g.neighbors(word);
        REQUIRE(list.size() == 2);
        for (const auto& n : list) {
            CHECK(n.weight == doctest::Approx(-0.5).epsilon(1e-6));
            CHECK(n.word != word);
        }
    }
}

TEST_CASE("duplicate vectors are each other's top neighbor at 1.0") {
    EmbeddingMatrix m({"v", "w", "far"}, 2, {3.0f, 4.0f, 3.0f, 4.0f, -5.0f, 1.0f});
    auto g = build_knn_graph(m, {1, 1000, 1});
    auto list = g.neighbors("w");
    REQUIRE(list.size() == 1);
    CHECK(list[0].word == "v");
    CHECK(list[0].weight == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("blocked result equals brute force for every block size") {
    auto m = fixtures::random_matrix(120, 10, 42);
    auto reference = brute_force_knn(m, 7);
    for (std::size_t block : {1u, 3u, 17u, 64u, 1000u}) {
        auto g = build_knn_graph(m, {7, block, 4});
        for (std::size_t q = 0; q < m.size(); ++q) {
            auto got = g.neighbors(m.token(q));
            REQUIRE(got.size() == reference[q].size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].word == reference[q][i].word);
                CHECK(got[i].weight == doctest::Approx(reference[q][i].weight).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("neighbor count is min(topN, vocab-1)") {
    auto m = fixtures::random_matrix(5, 4, 3);
    auto g = build_knn_graph(m, {200, 1000, 1});
    for (const auto& word : g.words())
        CHECK(g.neighbors(word).size() == 4);
}

TEST_CASE("same matrix yields the same graph for any worker count") {
    auto m = fixtures::random_matrix(80, 6, 5);
    auto a = build_knn_graph(m, {10, 16, 1});
    auto b = build_knn_graph(m, {10, 16, 8});
    CHECK(a == b);
}

TEST_CASE("a single-word matrix is rejected") {
    EmbeddingMatrix m({"only"}, 2, {1.0f, 2.0f});
    CHECK_THROWS_AS(build_knn_graph(m, {5, 1000, 1}), ConfigError);
}
