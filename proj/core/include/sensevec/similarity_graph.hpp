#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sensevec/util.hpp"

namespace sensevec {

struct WeightedNeighbor {
    std::string word;
    double weight = 0.0;
    bool operator==(const WeightedNeighbor&) const = default;
};

// Canonical neighbor-list order: weight descending, ties by token ascending.
bool neighbor_order(const WeightedNeighbor& a, const WeightedNeighbor& b);

// Per-word ranked neighbor lists, capped at top_n. Lists never contain the
// word itself, duplicates are collapsed keeping the maximum weight, and
// every list is kept in canonical order. Words keep insertion order so
// that saved files are reproducible.
class SimilarityGraph {
public:
    explicit SimilarityGraph(std::size_t top_n);

    std::size_t top_n() const noexcept { return top_n_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<std::string>& words() const noexcept { return words_; }
    bool contains(std::string_view word) const { return index_.contains(word); }

    // Throws std::out_of_range for unknown words.
    std::span<const WeightedNeighbor> neighbors(std::string_view word) const;

    // Normalizes `list` (self-edges dropped, duplicates collapsed to max
    // weight, canonical sort, truncation to top_n) and stores it.
    void set_neighbors(const std::string& word, std::vector<WeightedNeighbor> list);

    struct LoadStats {
        std::size_t lines = 0;
        std::size_t self_edges_dropped = 0;
        std::size_t duplicates_collapsed = 0;
    };

    // TSV "word<TAB>neighbor<TAB>weight". Weights must be finite; negative
    // weights are legal so that graphs built from embeddings (which keep
    // negative cosines) survive a save/load cycle.
    static SimilarityGraph load(const std::filesystem::path& path, std::size_t top_n,
                                LoadStats* stats = nullptr);
    void save(const std::filesystem::path& path) const;

    // Order-insensitive equality on word -> neighbor list.
    bool operator==(const SimilarityGraph& other) const;

private:
    std::size_t top_n_;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
    std::vector<std::vector<WeightedNeighbor>> lists_;
};

}  // namespace sensevec
