#include "sensevec/induction.hpp"

#include <algorithm>
#include <atomic>

#include "sensevec/chinese_whispers.hpp"
#include "sensevec/ego_network.hpp"
#include "sensevec/parallel.hpp"

namespace sensevec {

std::vector<SenseCluster> induce_word(const std::string& target, const SimilarityGraph& graph,
                                      const InductionParams& params,
                                      std::size_t* clusters_dropped) {
    auto network = build_ego_network(target, graph, params.network_size, params.connectivity);
    auto partition = chinese_whispers(network, params.max_iterations,
                                      word_seed(params.seed, target));

    // Member weight = similarity of the member to the target word.
    auto ranked = graph.neighbors(target);
    std::unordered_map<std::string_view, double> weight_of;
    weight_of.reserve(ranked.size());
    for (const auto& n : ranked) weight_of.emplace(n.word, n.weight);

    std::vector<SenseCluster> clusters;
    std::size_t dropped = 0;
    for (const auto& node_ids : partition.clusters()) {
        if (node_ids.size() < params.min_cluster_size) {
            ++dropped;
            continue;
        }
        SenseCluster cluster;
        cluster.word = target;
        cluster.members.reserve(node_ids.size());
        for (std::uint32_t id : node_ids) {
            const std::string& member = network.node(id);
            cluster.members.push_back({member, weight_of.at(member)});
        }
        std::sort(cluster.members.begin(), cluster.members.end(), neighbor_order);
        clusters.push_back(std::move(cluster));
    }

    // Ids in decreasing cluster-size order, ties by the lexicographically
    // smallest member.
    auto smallest_member = [](const SenseCluster& c) -> const std::string& {
        static const std::string empty;
        if (c.members.empty()) return empty;
        return std::min_element(c.members.begin(), c.members.end(),
                                [](const WeightedNeighbor& a, const WeightedNeighbor& b) {
                                    return a.word < b.word;
                                })
            ->word;
    };
    std::sort(clusters.begin(), clusters.end(), [&](const SenseCluster& a, const SenseCluster& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return smallest_member(a) < smallest_member(b);
    });
    for (std::size_t i = 0; i < clusters.size(); ++i)
        clusters[i].sense_id = static_cast<int>(i);

    if (clusters_dropped) *clusters_dropped += dropped;
    return clusters;
}

SenseInventory induce_inventory(const SimilarityGraph& graph, const InductionParams& params,
                                const std::optional<std::vector<std::string>>& targets,
                                unsigned threads, InductionStats* stats) {
    params.validate();
    const std::vector<std::string>& words = targets ? *targets : graph.words();

    std::vector<std::vector<SenseCluster>> results(words.size());
    std::vector<std::size_t> dropped(words.size(), 0);
    parallel_for(words.size(), threads, [&](std::size_t i) {
        if (!graph.contains(words[i])) return;  // empty entry
        results[i] = induce_word(words[i], graph, params, &dropped[i]);
    });

    SenseInventory inventory(params);
    InductionStats local;
    for (std::size_t i = 0; i < words.size(); ++i) {
        ++local.words_processed;
        local.clusters_kept += results[i].size();
        local.clusters_dropped += dropped[i];
        if (results[i].empty()) ++local.words_without_senses;
        inventory.set_entry(words[i], std::move(results[i]));
    }
    if (stats) *stats = local;
    return inventory;
}

}  // namespace sensevec
