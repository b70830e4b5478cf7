#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "sensevec/eval.hpp"

namespace sensevec {

ClusteringScores clustering_metrics(const std::map<std::string, std::string>& predicted,
                                    const std::map<std::string, std::string>& gold) {
    if (predicted.size() != gold.size())
        throw std::invalid_argument("clustering metrics: instance sets differ in size");
    for (const auto& [id, label] : predicted)
        if (!gold.contains(id))
            throw std::invalid_argument("clustering metrics: instance '" + id +
                                        "' missing from gold labeling");
    const double n = static_cast<double>(predicted.size());
    if (predicted.empty())
        throw std::invalid_argument("clustering metrics: empty labelings");

    // Contingency counts.
    std::unordered_map<std::string, double> pred_sizes;
    std::unordered_map<std::string, double> gold_sizes;
    std::map<std::pair<std::string, std::string>, double> joint;
    for (const auto& [id, label] : predicted) {
        const std::string& g = gold.at(id);
        pred_sizes[label] += 1.0;
        gold_sizes[g] += 1.0;
        joint[{label, g}] += 1.0;
    }

    auto entropy = [&](const std::unordered_map<std::string, double>& sizes) {
        double h = 0.0;
        for (const auto& [label, count] : sizes) {
            double p = count / n;
            h -= p * std::log(p);
        }
        return h;
    };
    double h_pred = entropy(pred_sizes);
    double h_gold = entropy(gold_sizes);
    double mutual = 0.0;
    for (const auto& [labels, count] : joint) {
        double p_joint = count / n;
        double p_pred = pred_sizes[labels.first] / n;
        double p_gold = gold_sizes[labels.second] / n;
        mutual += p_joint * std::log(p_joint / (p_pred * p_gold));
    }

    ClusteringScores scores;
    if (pred_sizes.size() == 1 && gold_sizes.size() == 1) {
        scores.nmi = 1.0;  // both labelings trivial and therefore identical
    } else if (h_pred == 0.0 || h_gold == 0.0) {
        scores.nmi = 0.0;
    } else {
        scores.nmi = mutual / ((h_pred + h_gold) / 2.0);
        if (scores.nmi < 0.0) scores.nmi = 0.0;
        if (scores.nmi > 1.0) scores.nmi = 1.0;
    }

    // B-Cubed: per-instance precision/recall over same-cluster pairs
    // (including the instance itself), averaged.
    double precision_sum = 0.0;
    double recall_sum = 0.0;
    for (const auto& [id, label] : predicted) {
        const std::string& g = gold.at(id);
        double overlap = joint[{label, g}];
        precision_sum += overlap / pred_sizes[label];
        recall_sum += overlap / gold_sizes[g];
    }
    scores.bcubed_precision = precision_sum / n;
    scores.bcubed_recall = recall_sum / n;
    double denom = scores.bcubed_precision + scores.bcubed_recall;
    scores.bcubed_f = denom == 0.0 ? 0.0
                                   : 2.0 * scores.bcubed_precision * scores.bcubed_recall / denom;
    return scores;
}

}  // namespace sensevec
