#include <algorithm>

#include "sensevec/eval.hpp"
#include "sensevec/parallel.hpp"

namespace sensevec {

WsdReport make_report(WsdCounts counts) {
    WsdReport report;
    report.counts = counts;
    if (counts.attempted > 0)
        report.precision = static_cast<double>(counts.correct) / static_cast<double>(counts.attempted);
    if (counts.total > 0)
        report.recall = static_cast<double>(counts.correct) / static_cast<double>(counts.total);
    double denom = report.precision + report.recall;
    if (denom > 0.0)
        report.fscore = 2.0 * report.precision * report.recall / denom;
    return report;
}

namespace {

enum class Outcome { correct, wrong, unmapped, failure };

WsdReport reduce(const std::vector<Outcome>& outcomes) {
    WsdCounts counts;
    counts.total = outcomes.size();
    for (Outcome o : outcomes) {
        switch (o) {
            case Outcome::correct:
                ++counts.attempted;
                ++counts.correct;
                break;
            case Outcome::wrong:
                ++counts.attempted;
                break;
            case Outcome::failure:
                ++counts.failures;
                [[fallthrough]];
            case Outcome::unmapped:
                ++counts.unmapped;
                break;
        }
    }
    return make_report(counts);
}

}  // namespace

WsdReport evaluate_wsd(const GoldDataset& dataset, const Predictor& predictor,
                       const SenseMapping& mapping, unsigned threads) {
    std::vector<Outcome> outcomes(dataset.instances.size(), Outcome::unmapped);
    parallel_for(dataset.instances.size(), threads, [&](std::size_t i) {
        const GoldInstance& instance = dataset.instances[i];
        std::optional<int> predicted;
        try {
            predicted = predictor(instance);
        } catch (...) {
            outcomes[i] = Outcome::failure;
            return;
        }
        if (!predicted) {
            outcomes[i] = Outcome::failure;
            return;
        }
        auto gold = mapping.mapped(instance.target, *predicted);
        if (!gold) {
            outcomes[i] = Outcome::unmapped;
            return;
        }
        outcomes[i] = *gold == instance.gold_sense ? Outcome::correct : Outcome::wrong;
    });
    return reduce(outcomes);
}

BaselineReports baselines(const GoldDataset& dataset, const SenseInventory& induced,
                          const SenseMapping& mapping, std::uint64_t seed) {
    // Most frequent gold sense per word, by dataset counts; frequency ties
    // go to the lower sense id.
    std::map<std::string, std::map<int, std::size_t>> gold_counts;
    for (const auto& instance : dataset.instances)
        ++gold_counts[instance.target][instance.gold_sense];
    std::map<std::string, int> gold_mfs;
    for (const auto& [word, counts] : gold_counts) {
        int best = 0;
        std::size_t best_count = 0;
        for (const auto& [sense, count] : counts) {
            if (count > best_count) {
                best = sense;
                best_count = count;
            }
        }
        gold_mfs[word] = best;
    }

    std::vector<Outcome> upper(dataset.instances.size());
    std::vector<Outcome> mfs_gold(dataset.instances.size());
    std::vector<Outcome> mfs_induced(dataset.instances.size());
    std::vector<Outcome> random(dataset.instances.size());

    for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
        const GoldInstance& instance = dataset.instances[i];
        std::span<const SenseCluster> senses;
        if (induced.contains(instance.target)) senses = induced.senses(instance.target);

        // Upper bound: correct iff any induced sense maps to the gold sense.
        upper[i] = Outcome::unmapped;
        for (const auto& cluster : senses) {
            auto gold = mapping.mapped(instance.target, cluster.sense_id);
            if (gold && *gold == instance.gold_sense) {
                upper[i] = Outcome::correct;
                break;
            }
        }

        // Gold MFS predicts in gold-sense space directly; no mapping needed.
        mfs_gold[i] = gold_mfs.at(instance.target) == instance.gold_sense ? Outcome::correct
                                                                          : Outcome::wrong;

        auto score_through_mapping = [&](int induced_id) {
            auto gold = mapping.mapped(instance.target, induced_id);
            if (!gold) return Outcome::unmapped;
            return *gold == instance.gold_sense ? Outcome::correct : Outcome::wrong;
        };

        if (senses.empty()) {
            mfs_induced[i] = Outcome::unmapped;
            random[i] = Outcome::unmapped;
        } else {
            int lowest_id = senses.front().sense_id;
            for (const auto& cluster : senses) lowest_id = std::min(lowest_id, cluster.sense_id);
            mfs_induced[i] = score_through_mapping(lowest_id);
            // Seeded per instance id, so instance order cannot matter.
            std::uint64_t draw = word_seed(seed, instance.id);
            const SenseCluster& pick = senses[draw % senses.size()];
            random[i] = score_through_mapping(pick.sense_id);
        }
    }

    BaselineReports reports;
    reports.upper_bound = reduce(upper);
    reports.mfs_gold = reduce(mfs_gold);
    reports.mfs_induced = reduce(mfs_induced);
    reports.random = reduce(random);
    return reports;
}

}  // namespace sensevec
