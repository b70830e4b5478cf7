#pragma once

#include <optional>
#include <vector>

#include "sensevec/inventory.hpp"
#include "sensevec/similarity_graph.hpp"

namespace sensevec {

struct InductionStats {
    std::size_t words_processed = 0;
    std::size_t clusters_kept = 0;
    std::size_t clusters_dropped = 0;
    std::size_t words_without_senses = 0;
};

// Induces one entry: ego-network, Chinese Whispers, size filter, weight
// attachment and id assignment (size descending, ties by smallest member).
std::vector<SenseCluster> induce_word(const std::string& target, const SimilarityGraph& graph,
                                      const InductionParams& params,
                                      std::size_t* clusters_dropped = nullptr);

// Runs induce_word over `targets` (default: every word of the graph) in
// parallel. Per-word seeds are derived from (params.seed, word), so the
// result is independent of thread count.
SenseInventory induce_inventory(const SimilarityGraph& graph, const InductionParams& params,
                                const std::optional<std::vector<std::string>>& targets = std::nullopt,
                                unsigned threads = 0, InductionStats* stats = nullptr);

}  // namespace sensevec
