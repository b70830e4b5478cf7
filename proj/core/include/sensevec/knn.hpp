#pragma once

#include "sensevec/embedding.hpp"
#include "sensevec/similarity_graph.hpp"

namespace sensevec {

struct KnnOptions {
    std::size_t top_n = 200;      // neighbors kept per word
    std::size_t block_size = 1000;  // query rows processed per work item
    unsigned threads = 0;         // 0 = all hardware threads
};

// Exact top-k cosine neighbors for every word, computed blockwise. The
// result is identical for every block_size and thread count: scores are
// per-pair double dot products of unit rows, and ties at the top-k cut
// are broken lexicographically.
SimilarityGraph build_knn_graph(const EmbeddingMatrix& matrix, const KnnOptions& options = {});

}  // namespace sensevec
