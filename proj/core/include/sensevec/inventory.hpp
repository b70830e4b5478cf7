#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sensevec/similarity_graph.hpp"

namespace sensevec {

struct InductionParams {
    std::size_t network_size = 200;     // ego-network node count (N)
    std::size_t connectivity = 200;     // edges allowed per node (n)
    std::size_t min_cluster_size = 15;  // clusters below this are dropped (k)
    std::size_t max_iterations = 20;
    std::uint64_t seed = 0;

    void validate() const;

    // Named granularity presets over the same network size.
    static InductionParams fine() { return {200, 50, 5, 20, 0}; }
    static InductionParams medium() { return {200, 100, 5, 20, 0}; }
    static InductionParams coarse() { return {200, 200, 15, 20, 0}; }
};

// One sense of a word: a weighted cluster of related words. Member weights
// are the similarity of the member to the target word. Members are kept in
// canonical order (weight descending, ties by token).
struct SenseCluster {
    std::string word;
    int sense_id = 0;
    std::vector<WeightedNeighbor> members;

    bool operator==(const SenseCluster&) const = default;
};

// Per-word sense clusters. Induced inventories satisfy: ids are
// 0..count-1 in decreasing cluster-size order (ties by lexicographically
// smallest member), every cluster has >= min_cluster_size members, and
// the word never appears inside its own clusters. Loaded inventories are
// tagged external and may violate the size bound.
class SenseInventory {
public:
    SenseInventory() = default;
    explicit SenseInventory(InductionParams params) : params_(params) {}

    bool is_external() const noexcept { return !params_.has_value(); }
    const std::optional<InductionParams>& params() const noexcept { return params_; }

    std::size_t word_count() const noexcept { return words_.size(); }
    std::size_t sense_count() const noexcept;
    const std::vector<std::string>& words() const noexcept { return words_; }
    bool contains(std::string_view word) const { return index_.contains(word); }

    // Empty span for words with an entry but no surviving clusters;
    // throws std::out_of_range for unknown words.
    std::span<const SenseCluster> senses(std::string_view word) const;

    // Clusters must already carry word/sense_id fields; replaces any
    // previous entry for the word.
    void set_entry(const std::string& word, std::vector<SenseCluster> clusters);

    // TSV "word<TAB>senseId<TAB>member:weight,member:weight,...".
    static SenseInventory load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    // Mean number of senses over words with at least one sense.
    double average_polysemy() const;

    bool operator==(const SenseInventory& other) const;

private:
    std::optional<InductionParams> params_;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
    std::vector<std::vector<SenseCluster>> entries_;
};

}  // namespace sensevec
