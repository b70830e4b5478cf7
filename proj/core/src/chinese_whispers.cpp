#include "sensevec/chinese_whispers.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "sensevec/util.hpp"

namespace sensevec {

namespace {

// Minimal xorshift-based generator with a hand-rolled Fisher-Yates so the
// visit order is identical on every platform.
class VisitOrder {
public:
    explicit VisitOrder(std::uint64_t seed) : state_(splitmix64(seed ^ 0x5bf0362c689bd21dULL)) {}

    void shuffle(std::vector<std::uint32_t>& order) {
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[next_bounded(i)]);
    }

private:
    std::uint64_t next() {
        state_ = splitmix64(state_);
        return state_;
    }
    std::size_t next_bounded(std::size_t bound) { return next() % bound; }

    std::uint64_t state_;
};

}  // namespace

ChineseWhispersResult chinese_whispers(const EgoNetwork& graph, std::size_t max_iterations,
                                       std::uint64_t seed) {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    const std::size_t n = graph.node_count();
    ChineseWhispersResult result;
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        result.labels[i] = static_cast<std::uint32_t>(i);
    if (n == 0) {
        result.converged = true;
        return result;
    }

    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    VisitOrder rng(seed);

    std::map<std::uint32_t, double> class_weight;
    for (std::size_t sweep = 0; sweep < max_iterations; ++sweep) {
        rng.shuffle(order);
        bool changed = false;
        for (std::uint32_t node : order) {
            auto edges = graph.edges_of(node);
            if (edges.empty()) continue;
            class_weight.clear();
            for (const auto& [neighbor, weight] : edges)
                class_weight[result.labels[neighbor]] += weight;
            // Highest total weight wins; map order makes the smallest label
            // win exact ties.
            std::uint32_t best = result.labels[node];
            double best_weight = -std::numeric_limits<double>::infinity();
            for (const auto& [label, weight] : class_weight) {
                if (weight > best_weight) {
                    best = label;
                    best_weight = weight;
                }
            }
            if (best != result.labels[node]) {
                result.labels[node] = best;
                changed = true;
            }
        }
        ++result.sweeps;
        if (!changed) {
            result.converged = true;
            break;
        }
    }
    return result;
}

std::vector<std::vector<std::uint32_t>> ChineseWhispersResult::clusters() const {
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_label[labels[i]].push_back(static_cast<std::uint32_t>(i));
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(by_label.size());
    for (auto& [label, members] : by_label) out.push_back(std::move(members));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return out;
}

}  // namespace sensevec
