#include "sensevec/knn.hpp"

#include <algorithm>

#include "sensevec/parallel.hpp"

namespace sensevec {

SimilarityGraph build_knn_graph(const EmbeddingMatrix& matrix, const KnnOptions& options) {
    if (options.top_n < 1) throw ConfigError("knn: top_n must be >= 1");
    if (options.block_size < 1) throw ConfigError("knn: block_size must be >= 1");
    const std::size_t vocab = matrix.size();
    const std::size_t dim = matrix.dim();
    if (vocab < 2)
        throw ConfigError("knn: need at least 2 words, got " + std::to_string(vocab));

    // Unit-L2 rows in double; cosine then reduces to a dot product.
    std::vector<double> unit(vocab * dim);
    for (std::size_t i = 0; i < vocab; ++i) {
        auto r = matrix.row(i);
        double norm = l2_norm(r);
        for (std::size_t j = 0; j < dim; ++j)
            unit[i * dim + j] = static_cast<double>(r[j]) / norm;
    }

    const std::size_t keep = std::min(options.top_n, vocab - 1);
    std::vector<std::vector<WeightedNeighbor>> rows(vocab);
    const std::size_t n_blocks = (vocab + options.block_size - 1) / options.block_size;

    parallel_for(n_blocks, options.threads, [&](std::size_t block) {
        const std::size_t begin = block * options.block_size;
        const std::size_t end = std::min(vocab, begin + options.block_size);
        std::vector<std::pair<double, std::size_t>> scores;
        scores.reserve(vocab - 1);
        for (std::size_t q = begin; q < end; ++q) {
            const double* qv = unit.data() + q * dim;
            scores.clear();
            for (std::size_t c = 0; c < vocab; ++c) {
                if (c == q) continue;
                const double* cv = unit.data() + c * dim;
                double s = 0.0;
                for (std::size_t j = 0; j < dim; ++j) s += qv[j] * cv[j];
                if (s > 1.0) s = 1.0;
                if (s < -1.0) s = -1.0;
                scores.emplace_back(s, c);
            }
            auto better = [&](const std::pair<double, std::size_t>& a,
                              const std::pair<double, std::size_t>& b) {
                if (a.first != b.first) return a.first > b.first;
                return matrix.token(a.second) < matrix.token(b.second);
            };
            std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep),
                              scores.end(), better);
            auto& out = rows[q];
            out.reserve(keep);
            for (std::size_t i = 0; i < keep; ++i)
                out.push_back({matrix.token(scores[i].second), scores[i].first});
        }
    });

    SimilarityGraph graph(options.top_n);
    for (std::size_t q = 0; q < vocab; ++q)
        graph.set_neighbors(matrix.token(q), std::move(rows[q]));
    return graph;
}

}  // namespace sensevec
