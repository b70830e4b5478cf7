#include "sensevec/pooling.hpp"

#include <algorithm>
#include <cmath>

namespace sensevec {

PoolingMode parse_pooling_mode(std::string_view name) {
    if (name == "weighted") return PoolingMode::weighted;
    if (name == "unweighted" || name == "mean") return PoolingMode::unweighted;
    throw ConfigError("unknown pooling mode '" + std::string(name) +
                      "' (expected weighted|unweighted)");
}

std::string_view pooling_mode_name(PoolingMode mode) {
    return mode == PoolingMode::weighted ? "weighted" : "unweighted";
}

SenseKey SenseKey::parse(std::string_view token) {
    auto hash = token.rfind('#');
    if (hash == std::string_view::npos || hash == 0 || hash + 1 == token.size())
        throw ParseError("not a word#senseId key: '" + std::string(token) + "'");
    SenseKey key;
    key.word = std::string(token.substr(0, hash));
    key.sense_id = parse_number<int>(token.substr(hash + 1), "sense id");
    return key;
}

std::vector<double> pool_sense(const SenseCluster& cluster, const EmbeddingMatrix& matrix,
                               PoolingMode mode, std::size_t* members_missing) {
    std::vector<double> sum(matrix.dim(), 0.0);
    double total_weight = 0.0;
    std::size_t missing = 0;
    std::size_t found = 0;
    for (const auto& member : cluster.members) {
        auto row = matrix.row_of(member.word);
        if (!row) {
            ++missing;
            continue;
        }
        const double weight = mode == PoolingMode::weighted ? member.weight : 1.0;
        auto vec = matrix.row(*row);
        for (std::size_t j = 0; j < sum.size(); ++j)
            sum[j] += weight * static_cast<double>(vec[j]);
        total_weight += weight;
        ++found;
    }
    if (members_missing) *members_missing += missing;
    if (found == 0)
        throw std::invalid_argument("no member of sense " + cluster.word + "#" +
                                    std::to_string(cluster.sense_id) + " is in the vocabulary");
    if (total_weight <= 0.0)
        throw std::invalid_argument("nonpositive total weight pooling sense " + cluster.word +
                                    "#" + std::to_string(cluster.sense_id));
    for (double& v : sum) v /= total_weight;
    return sum;
}

void SenseVectorStore::insert(SenseKey key, std::vector<double> vector) {
    senses_by_word_[key.word].push_back(keys_.size());
    keys_.push_back(std::move(key));
    vectors_.push_back(std::move(vector));
}

SenseVectorStore SenseVectorStore::build(const SenseInventory& inventory,
                                         const EmbeddingMatrix& matrix, PoolingMode mode,
                                         PoolReport* report) {
    SenseVectorStore store;
    store.dim_ = matrix.dim();
    store.mode_ = mode;
    store.inventory_ref_ = inventory.is_external() ? "external" : "induced";
    PoolReport local;
    for (const auto& word : inventory.words()) {
        for (const auto& cluster : inventory.senses(word)) {
            std::size_t missing = 0;
            std::vector<double> vec;
            try {
                vec = pool_sense(cluster, matrix, mode, &missing);
            } catch (const std::invalid_argument&) {
                ++local.clusters_skipped;
                local.members_missing += missing;
                continue;
            }
            local.members_missing += missing;
            bool zero = std::all_of(vec.begin(), vec.end(), [](double v) { return v == 0.0; });
            if (zero) {
                ++local.clusters_skipped;
                continue;
            }
            ++local.clusters_pooled;
            store.insert({word, cluster.sense_id}, std::move(vec));
        }
    }
    if (report) *report = local;
    return store;
}

EmbeddingMatrix SenseVectorStore::to_matrix() const {
    if (keys_.empty())
        throw std::runtime_error("cannot export an empty sense vector store");
    std::vector<std::string> vocab;
    vocab.reserve(keys_.size());
    std::vector<float> data;
    data.reserve(keys_.size() * dim_);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        vocab.push_back(keys_[i].to_string());
        for (double v : vectors_[i]) data.push_back(static_cast<float>(v));
    }
    return EmbeddingMatrix(std::move(vocab), dim_, std::move(data), MatrixKind::word);
}

SenseVectorStore SenseVectorStore::from_matrix(const EmbeddingMatrix& matrix,
                                               std::string provenance) {
    SenseVectorStore store;
    store.dim_ = matrix.dim();
    store.inventory_ref_ = std::move(provenance);
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        auto key = SenseKey::parse(matrix.token(i));
        auto row = matrix.row(i);
        store.insert(std::move(key), std::vector<double>(row.begin(), row.end()));
    }
    return store;
}

std::vector<int> SenseVectorStore::senses_of(std::string_view word) const {
    auto it = senses_by_word_.find(word);
    if (it == senses_by_word_.end()) return {};
    std::vector<int> ids;
    ids.reserve(it->second.size());
    for (std::size_t idx : it->second) ids.push_back(keys_[idx].sense_id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::span<const double> SenseVectorStore::vector_of(std::string_view word, int sense_id) const {
    auto it = senses_by_word_.find(word);
    if (it != senses_by_word_.end()) {
        for (std::size_t idx : it->second)
            if (keys_[idx].sense_id == sense_id) return vectors_[idx];
    }
    throw std::out_of_range("unknown sense key: '" + std::string(word) + "#" +
                            std::to_string(sense_id) + "'");
}

std::vector<std::pair<SenseKey, double>> SenseVectorStore::sense_neighbors(
    std::string_view word, int sense_id, std::size_t top_k) const {
    auto query = vector_of(word, sense_id);
    std::vector<std::pair<SenseKey, double>> scored;
    scored.reserve(keys_.size() - 1);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (keys_[i].word == word && keys_[i].sense_id == sense_id) continue;
        scored.emplace_back(keys_[i], cosine(std::span<const double>(vectors_[i]), query));
    }
    auto better = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    std::size_t keep = std::min(top_k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), better);
    scored.resize(keep);
    return scored;
}

}  // namespace sensevec
