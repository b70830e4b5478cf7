#include <doctest.h>

#include <cmath>

#include "sensevec/eval.hpp"

using namespace sensevec;

namespace {

SenseCluster cluster(const std::string& word, int id,
                     std::vector<WeightedNeighbor> members) {
    return SenseCluster{word, id, std::move(members)};
}

}  // namespace

TEST_CASE("an identical cluster maps with cosine 1") {
    SenseInventory induced;
    induced.set_entry("t", {cluster("t", 0, {{"a", 0.9}, {"b", 0.5}})});
    SenseInventory gold;
    gold.set_entry("t", {cluster("t", 0, {{"a", 0.9}, {"b", 0.5}}),
                         cluster("t", 1, {{"x", 1.0}, {"y", 1.0}})});
    auto mapping = map_inventories(induced, gold);
    CHECK(mapping.mapped("t", 0) == 0);
}

TEST_CASE("zero overlap stays unmapped") {
    SenseInventory induced;
    induced.set_entry("t", {cluster("t", 0, {{"p", 0.9}, {"q", 0.5}})});
    SenseInventory gold;
    gold.set_entry("t", {cluster("t", 0, {{"a", 0.9}}), cluster("t", 1, {{"b", 1.0}})});
    auto mapping = map_inventories(induced, gold);
    CHECK(!mapping.mapped("t", 0));
    CHECK(mapping.size() == 0);
}

TEST_CASE("three induced against two gold senses follow the cosine table") {
    // Sparse cosines evaluated by hand. All weights binary for clarity.
    //   induced 0 = {a, b}      gold 0 = {a, b, c}   gold 1 = {c, d}
    //     cos(i0, g0) = 2/(sqrt(2)*sqrt(3)) = 0.8165   -> maps to 0
    //     cos(i0, g1) = 0
    //   induced 1 = {c}         cos(i1, g0) = 1/sqrt(3) = 0.577
    //                           cos(i1, g1) = 1/sqrt(2) = 0.707 -> maps to 1
    //   induced 2 = {e, f}      no overlap                      -> unmapped
    SenseInventory induced;
    induced.set_entry("t", {cluster("t", 0, {{"a", 1.0}, {"b", 1.0}}),
                            cluster("t", 1, {{"c", 1.0}}),
                            cluster("t", 2, {{"e", 1.0}, {"f", 1.0}})});
    SenseInventory gold;
    gold.set_entry("t", {cluster("t", 0, {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}),
                         cluster("t", 1, {{"c", 1.0}, {"d", 1.0}})});
    auto mapping = map_inventories(induced, gold);
    CHECK(mapping.mapped("t", 0) == 0);
    CHECK(mapping.mapped("t", 1) == 1);
    CHECK(!mapping.mapped("t", 2));
    CHECK(mapping.size() == 2);
}

TEST_CASE("weights shift the winning gold sense") {
    // Induced {a:3, b:1}. Binary gold senses {a} vs {b}:
    //   cos with {a} = 3/sqrt(10), cos with {b} = 1/sqrt(10).
    SenseInventory induced;
    induced.set_entry("t", {cluster("t", 0, {{"a", 3.0}, {"b", 1.0}})});
    SenseInventory gold;
    gold.set_entry("t", {cluster("t", 0, {{"b", 1.0}}), cluster("t", 1, {{"a", 1.0}})});
    auto mapping = map_inventories(induced, gold);
    CHECK(mapping.mapped("t", 0) == 1);

    // Ignoring weights makes it a tie, resolved toward the lower id.
    SenseMappingOptions binary;
    binary.binary_bow = true;
    auto tie = map_inventories(induced, gold, binary);
    CHECK(tie.mapped("t", 0) == 0);
}

TEST_CASE("a mapping threshold can suppress weak matches") {
    SenseInventory induced;
    induced.set_entry("t", {cluster("t", 0, {{"a", 1.0}, {"x", 1.0}, {"y", 1.0}, {"z", 1.0}})});
    SenseInventory gold;
    gold.set_entry("t", {cluster("t", 0, {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"d", 1.0}})});
    CHECK(map_inventories(induced, gold).mapped("t", 0) == 0);  // cos = 1/4
    SenseMappingOptions strict;
    strict.min_cosine = 0.5;
    CHECK(!map_inventories(induced, gold, strict).mapped("t", 0));
}

TEST_CASE("words missing from either inventory are skipped") {
    SenseInventory induced;
    induced.set_entry("only-induced", {cluster("only-induced", 0, {{"a", 1.0}})});
    SenseInventory gold;
    gold.set_entry("only-gold", {cluster("only-gold", 0, {{"a", 1.0}})});
    auto mapping = map_inventories(induced, gold);
    CHECK(mapping.size() == 0);
}

TEST_CASE("multiple induced senses may share one gold sense") {
    SenseInventory induced;
    induced.set_entry("t", {cluster("t", 0, {{"a", 1.0}}), cluster("t", 1, {{"a", 1.0}, {"b", 1.0}})});
    SenseInventory gold;
    gold.set_entry("t", {cluster("t", 0, {{"a", 1.0}, {"b", 1.0}})});
    auto mapping = map_inventories(induced, gold);
    CHECK(mapping.mapped("t", 0) == 0);
    CHECK(mapping.mapped("t", 1) == 0);
}
