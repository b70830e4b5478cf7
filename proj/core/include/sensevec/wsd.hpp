#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensevec/embedding.hpp"
#include "sensevec/pooling.hpp"

namespace sensevec {

enum class WsdStrategy { probability, similarity };

WsdStrategy parse_wsd_strategy(std::string_view name);
std::string_view wsd_strategy_name(WsdStrategy strategy);

struct DisambiguationRequest {
    std::string target;
    std::vector<std::string> context;
    WsdStrategy strategy = WsdStrategy::similarity;
    std::optional<std::size_t> filter_p;  // keep the p most discriminative context words
};

struct DisambiguationResult {
    int chosen = 0;
    std::vector<int> sense_ids;          // ascending; scores[i] belongs to sense_ids[i]
    std::vector<double> scores;
    std::vector<std::string> used_context;
    WsdStrategy strategy = WsdStrategy::similarity;
    bool mfs_fallback = false;           // no usable context; largest cluster returned
};

// Mean of the vectors of the resolvable context words; unresolvable words
// are skipped and counted. Throws if nothing resolves.
std::vector<double> mean_context_vector(std::span<const std::string> context,
                                        const EmbeddingMatrix& matrix,
                                        std::size_t* skipped = nullptr);

// Sense probability given a context: logistic sigmoid of the dot product
// with the mean context-embedding vector.
double score_probability(std::span<const double> sense, std::span<const double> context_mean);

// Cosine between the sense vector and the mean word-embedding vector.
double score_similarity(std::span<const double> sense, std::span<const double> context_mean);

// Keeps the p context words whose single-word score spreads the senses
// furthest (max over senses minus min over senses), in original order.
// Words missing from the matrix score 0. `matrix` must be the context
// matrix for the probability strategy and the word matrix otherwise.
std::vector<std::string> filter_context(std::span<const std::string> context,
                                        std::span<const std::vector<double>> senses,
                                        const EmbeddingMatrix& matrix, WsdStrategy strategy,
                                        std::size_t p);

// Scores every sense of the target against the (optionally filtered)
// context and returns the argmax, ties to the lowest sense id. An empty
// or fully unresolvable context falls back to sense 0, the largest
// cluster. The probability strategy requires the context matrix.
DisambiguationResult disambiguate(const DisambiguationRequest& request,
                                  const SenseVectorStore& store, const EmbeddingMatrix& words,
                                  const EmbeddingMatrix* contexts = nullptr);

struct BatchStats {
    std::size_t instances = 0;
    std::size_t fallbacks = 0;
    std::size_t unknown_targets = 0;
};

// TSV "id<TAB>target<TAB>context" -> "id<TAB>word#senseId<TAB>score".
// Unknown targets produce no output line and are counted.
BatchStats disambiguate_file(const std::filesystem::path& input,
                             const std::filesystem::path& output, const SenseVectorStore& store,
                             const EmbeddingMatrix& words, const EmbeddingMatrix* contexts,
                             WsdStrategy strategy, std::optional<std::size_t> filter_p,
                             unsigned threads = 0);

}  // namespace sensevec
