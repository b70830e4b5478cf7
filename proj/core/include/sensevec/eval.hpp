#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sensevec/inventory.hpp"

namespace sensevec {

// ---------------------------------------------------------------------------
// Sense mapping

struct SenseMappingOptions {
    double min_cosine = 0.0;  // strict lower bound: overlap must exceed this
    bool binary_bow = false;  // ignore member weights in the bag-of-words vectors
};

// Partial map (word, induced sense) -> gold sense. Several induced senses
// may map to the same gold sense; an induced sense maps to at most one.
class SenseMapping {
public:
    std::optional<int> mapped(const std::string& word, int induced_id) const {
        auto it = pairs_.find({word, induced_id});
        if (it == pairs_.end()) return std::nullopt;
        return it->second;
    }
    void set(const std::string& word, int induced_id, int gold_id) {
        pairs_[{word, induced_id}] = gold_id;
    }
    std::size_t size() const noexcept { return pairs_.size(); }

private:
    std::map<std::pair<std::string, int>, int> pairs_;
};

// Represents each sense as a bag-of-words vector over its members and maps
// every induced sense to the gold sense with the highest cosine, provided
// the cosine exceeds min_cosine. Ties go to the lowest gold sense id.
SenseMapping map_inventories(const SenseInventory& induced, const SenseInventory& gold,
                             const SenseMappingOptions& options = {});

// ---------------------------------------------------------------------------
// Gold datasets

struct GoldInstance {
    std::string id;
    std::string target;
    std::vector<std::string> context;
    int gold_sense = 0;
};

struct GoldDataset {
    std::vector<GoldInstance> instances;
    SenseInventory gold_inventory;
};

// Directory layouts are described in the README. Both loaders validate
// referential integrity (every instance label exists in the inventory).
GoldDataset load_twsi(const std::filesystem::path& dir);
GoldDataset load_semeval13(const std::filesystem::path& dir);

// Keeps at most per_sense contexts per (word, sense) and drops words that
// are monosemous in the gold inventory. Without a seed the first contexts
// in file order are kept; with a seed, a reproducible sample.
GoldDataset balanced_subset(const GoldDataset& dataset, std::size_t per_sense = 5,
                            std::optional<std::uint64_t> seed = std::nullopt);

// ---------------------------------------------------------------------------
// Mapping-based WSD scoring

struct WsdCounts {
    std::size_t total = 0;      // evaluated instances
    std::size_t attempted = 0;  // predictions that carried a mapping
    std::size_t correct = 0;
    std::size_t unmapped = 0;   // predictions without a mapping (or failures)
    std::size_t failures = 0;   // predictor errors
};

struct WsdReport {
    double precision = 0.0;  // correct / attempted
    double recall = 0.0;     // correct / total
    double fscore = 0.0;     // harmonic mean
    WsdCounts counts;
};

WsdReport make_report(WsdCounts counts);

// Returns the induced sense id for an instance, or nullopt on failure.
using Predictor = std::function<std::optional<int>(const GoldInstance&)>;

// Scores predictions against the gold labels through the sense mapping.
// Unmapped predictions hurt recall but not precision.
WsdReport evaluate_wsd(const GoldDataset& dataset, const Predictor& predictor,
                       const SenseMapping& mapping, unsigned threads = 0);

struct BaselineReports {
    WsdReport upper_bound;  // correct whenever some induced sense maps to the gold sense
    WsdReport mfs_gold;     // most frequent gold sense by dataset counts
    WsdReport mfs_induced;  // induced sense 0 everywhere, through the mapping
    WsdReport random;       // uniform over the word's induced senses, seeded
};

BaselineReports baselines(const GoldDataset& dataset, const SenseInventory& induced,
                          const SenseMapping& mapping, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Clustering comparison metrics

struct ClusteringScores {
    double nmi = 0.0;  // arithmetic-mean normalization
    double bcubed_precision = 0.0;
    double bcubed_recall = 0.0;
    double bcubed_f = 0.0;
};

// Crisp NMI and B-Cubed between two labelings of the same instance set.
// Throws if the instance sets differ.
ClusteringScores clustering_metrics(const std::map<std::string, std::string>& predicted,
                                    const std::map<std::string, std::string>& gold);

}  // namespace sensevec
