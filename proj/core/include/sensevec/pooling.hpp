#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sensevec/embedding.hpp"
#include "sensevec/inventory.hpp"

namespace sensevec {

enum class PoolingMode { unweighted, weighted };

PoolingMode parse_pooling_mode(std::string_view name);
std::string_view pooling_mode_name(PoolingMode mode);

struct SenseKey {
    std::string word;
    int sense_id = 0;

    std::string to_string() const { return word + "#" + std::to_string(sense_id); }
    static SenseKey parse(std::string_view token);  // "word#senseId"

    auto operator<=>(const SenseKey&) const = default;
};

// Mean (or weight-normalized mean) of the member vectors that resolve in
// the vocabulary. Accumulates in double. Throws if no member resolves, or
// if the resolvable weight mass is not positive in weighted mode.
std::vector<double> pool_sense(const SenseCluster& cluster, const EmbeddingMatrix& matrix,
                               PoolingMode mode, std::size_t* members_missing = nullptr);

struct PoolReport {
    std::size_t clusters_pooled = 0;
    std::size_t clusters_skipped = 0;  // nothing resolvable, or zero vector
    std::size_t members_missing = 0;
};

// Dense sense vectors keyed by (word, senseId). Immutable after build;
// concurrent queries are safe.
class SenseVectorStore {
public:
    static SenseVectorStore build(const SenseInventory& inventory, const EmbeddingMatrix& matrix,
                                  PoolingMode mode, PoolReport* report = nullptr);

    // Round-trips through the word2vec formats with "word#senseId" tokens
    // (vectors pass through float32).
    EmbeddingMatrix to_matrix() const;
    static SenseVectorStore from_matrix(const EmbeddingMatrix& matrix, std::string provenance);

    std::size_t size() const noexcept { return keys_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    PoolingMode mode() const noexcept { return mode_; }
    const std::string& inventory_ref() const noexcept { return inventory_ref_; }
    const std::vector<SenseKey>& keys() const noexcept { return keys_; }

    bool contains(std::string_view word) const { return senses_by_word_.contains(word); }
    // Sense ids of a word, ascending; empty if the word is unknown.
    std::vector<int> senses_of(std::string_view word) const;
    // Throws std::out_of_range for unknown keys.
    std::span<const double> vector_of(std::string_view word, int sense_id) const;

    // Top-k other senses by cosine, self excluded, ties by key.
    std::vector<std::pair<SenseKey, double>> sense_neighbors(std::string_view word, int sense_id,
                                                             std::size_t top_k) const;

private:
    void insert(SenseKey key, std::vector<double> vector);

    std::size_t dim_ = 0;
    PoolingMode mode_ = PoolingMode::weighted;
    std::string inventory_ref_;
    std::vector<SenseKey> keys_;
    std::vector<std::vector<double>> vectors_;
    std::unordered_map<std::string, std::vector<std::size_t>, StringHash, std::equal_to<>>
        senses_by_word_;  // word -> indexes into keys_/vectors_
};

}  // namespace sensevec
