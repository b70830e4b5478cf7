#include <cmath>
#include <unordered_map>

#include "sensevec/eval.hpp"

namespace sensevec {

namespace {

using Bow = std::unordered_map<std::string_view, double>;

Bow bag_of_words(const SenseCluster& cluster, bool binary) {
    Bow bow;
    bow.reserve(cluster.members.size());
    for (const auto& member : cluster.members)
        bow[member.word] = binary ? 1.0 : member.weight;
    return bow;
}

double sparse_cosine(const Bow& a, const Bow& b) {
    const Bow& small = a.size() <= b.size() ? a : b;
    const Bow& large = a.size() <= b.size() ? b : a;
    double dot = 0.0;
    for (const auto& [word, weight] : small) {
        auto it = large.find(word);
        if (it != large.end()) dot += weight * it->second;
    }
    if (dot == 0.0) return 0.0;
    auto norm = [](const Bow& bow) {
        double s = 0.0;
        for (const auto& [word, weight] : bow) s += weight * weight;
        return std::sqrt(s);
    };
    double na = norm(a);
    double nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (na * nb);
}

}  // namespace

SenseMapping map_inventories(const SenseInventory& induced, const SenseInventory& gold,
                             const SenseMappingOptions& options) {
    SenseMapping mapping;
    for (const auto& word : induced.words()) {
        if (!gold.contains(word)) continue;
        auto gold_senses = gold.senses(word);
        if (gold_senses.empty()) continue;

        std::vector<Bow> gold_bows;
        gold_bows.reserve(gold_senses.size());
        for (const auto& cluster : gold_senses)
            gold_bows.push_back(bag_of_words(cluster, options.binary_bow));

        for (const auto& cluster : induced.senses(word)) {
            Bow bow = bag_of_words(cluster, options.binary_bow);
            double best_cosine = 0.0;
            int best_gold = 0;
            bool found = false;
            for (std::size_t g = 0; g < gold_bows.size(); ++g) {
                double c = sparse_cosine(bow, gold_bows[g]);
                if (c <= options.min_cosine) continue;
                // Strictly-better wins; the scan follows stored gold order,
                // so among equals the first (lowest id on canonical
                // inventories) is kept.
                if (!found || c > best_cosine) {
                    found = true;
                    best_cosine = c;
                    best_gold = gold_senses[g].sense_id;
                } else if (c == best_cosine && gold_senses[g].sense_id < best_gold) {
                    best_gold = gold_senses[g].sense_id;
                }
            }
            if (found) mapping.set(word, cluster.sense_id, best_gold);
        }
    }
    return mapping;
}

}  // namespace sensevec
