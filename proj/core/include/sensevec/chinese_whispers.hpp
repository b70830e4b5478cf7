#pragma once

#include <cstdint>
#include <vector>

#include "sensevec/ego_network.hpp"

namespace sensevec {

struct ChineseWhispersResult {
    std::vector<std::uint32_t> labels;  // class label per node
    std::size_t sweeps = 0;             // sweeps actually run
    bool converged = false;             // a sweep finished without changes

    // Clusters ordered by size descending, ties by smallest node index;
    // node indices inside each cluster ascending.
    std::vector<std::vector<std::uint32_t>> clusters() const;
};

// Randomized label propagation. Every node starts in its own class; each
// sweep visits nodes in a fresh seed-derived order and lets every node
// adopt the class with the highest total incident edge weight (ties: the
// smallest class label). Updates are asynchronous. Stops after a sweep
// with no change or after max_iterations sweeps. Isolated nodes keep
// their singleton classes.
ChineseWhispersResult chinese_whispers(const EgoNetwork& graph, std::size_t max_iterations,
                                       std::uint64_t seed);

}  // namespace sensevec
