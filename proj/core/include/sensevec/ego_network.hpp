#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sensevec/similarity_graph.hpp"

namespace sensevec {

// Undirected weighted graph over a target word's nearest neighbors. The
// target itself is excluded. Nodes are indexed in the target's neighbor
// rank order.
class EgoNetwork {
public:
    EgoNetwork(std::string ego, std::vector<std::string> nodes);

    const std::string& ego() const noexcept { return ego_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    const std::string& node(std::uint32_t i) const { return nodes_.at(i); }

    // Adds an undirected edge; a repeated pair keeps the maximum weight.
    void add_edge(std::uint32_t a, std::uint32_t b, double weight);

    std::span<const std::pair<std::uint32_t, double>> edges_of(std::uint32_t node) const {
        return adjacency_.at(node);
    }
    std::size_t edge_count() const noexcept { return edge_count_; }
    double weight_of(std::uint32_t a, std::uint32_t b) const;  // 0 if absent

private:
    std::string ego_;
    std::vector<std::string> nodes_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Nodes: the target's top network_size neighbors. Edges: each node v is
// linked to those of v's own top `connectivity` neighbors that are also
// nodes. Throws std::out_of_range if the target is absent from the graph.
EgoNetwork build_ego_network(const std::string& target, const SimilarityGraph& graph,
                             std::size_t network_size, std::size_t connectivity);

}  // namespace sensevec
