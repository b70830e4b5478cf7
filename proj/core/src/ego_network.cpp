#include "sensevec/ego_network.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sensevec {

EgoNetwork::EgoNetwork(std::string ego, std::vector<std::string> nodes)
    : ego_(std::move(ego)), nodes_(std::move(nodes)), adjacency_(nodes_.size()) {
    for (const auto& n : nodes_)
        if (n == ego_)
            throw std::invalid_argument("ego word must not be a network node");
}

void EgoNetwork::add_edge(std::uint32_t a, std::uint32_t b, double weight) {
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    if (a >= nodes_.size() || b >= nodes_.size())
        throw std::out_of_range("edge endpoint outside node set");
    auto& fwd = adjacency_[a];
    auto it = std::find_if(fwd.begin(), fwd.end(),
                           [b](const auto& e) { return e.first == b; });
    if (it != fwd.end()) {
        if (weight > it->second) {
            it->second = weight;
            auto& bwd = adjacency_[b];
            auto jt = std::find_if(bwd.begin(), bwd.end(),
                                   [a](const auto& e) { return e.first == a; });
            jt->second = weight;
        }
        return;
    }
    adjacency_[a].emplace_back(b, weight);
    adjacency_[b].emplace_back(a, weight);
    ++edge_count_;
}

double EgoNetwork::weight_of(std::uint32_t a, std::uint32_t b) const {
    for (const auto& [n, w] : adjacency_.at(a))
        if (n == b) return w;
    return 0.0;
}

EgoNetwork build_ego_network(const std::string& target, const SimilarityGraph& graph,
                             std::size_t network_size, std::size_t connectivity) {
    auto ranked = graph.neighbors(target);
    const std::size_t n_nodes = std::min(network_size, ranked.size());

    std::vector<std::string> nodes;
    nodes.reserve(n_nodes);
    std::unordered_map<std::string_view, std::uint32_t> node_index;
    node_index.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes.push_back(ranked[i].word);
        node_index.emplace(ranked[i].word, static_cast<std::uint32_t>(i));
    }

    EgoNetwork net(target, std::move(nodes));
    for (std::uint32_t v = 0; v < n_nodes; ++v) {
        if (!graph.contains(net.node(v))) continue;
        auto candidates = graph.neighbors(net.node(v));
        const std::size_t limit = std::min(connectivity, candidates.size());
        for (std::size_t j = 0; j < limit; ++j) {
            auto it = node_index.find(candidates[j].word);
            if (it == node_index.end() || it->second == v) continue;
            net.add_edge(v, it->second, candidates[j].weight);
        }
    }
    return net;
}

}  // namespace sensevec
