#include <algorithm>
#include <fstream>
#include <set>

#include "sensevec/eval.hpp"

namespace sensevec {

namespace {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    for (auto part : split(text, ' ')) {
        part = trim(part);
        if (!part.empty()) tokens.emplace_back(part);
    }
    return tokens;
}

void require_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        throw ConfigError("dataset file missing: " + path.string());
}

void check_integrity(const GoldDataset& dataset) {
    for (const auto& instance : dataset.instances) {
        if (!dataset.gold_inventory.contains(instance.target))
            throw ParseError("instance '" + instance.id + "': word '" + instance.target +
                             "' not in the gold inventory");
        bool found = false;
        for (const auto& cluster : dataset.gold_inventory.senses(instance.target))
            if (cluster.sense_id == instance.gold_sense) {
                found = true;
                break;
            }
        if (!found)
            throw ParseError("instance '" + instance.id + "': sense " +
                             std::to_string(instance.gold_sense) + " of '" + instance.target +
                             "' not in the gold inventory");
    }
}

}  // namespace

GoldDataset load_twsi(const std::filesystem::path& dir) {
    const auto inventory_path = dir / "inventory.tsv";
    const auto contexts_path = dir / "contexts.tsv";
    require_file(inventory_path);
    require_file(contexts_path);

    GoldDataset dataset;
    dataset.gold_inventory = SenseInventory::load(inventory_path);

    std::ifstream in(contexts_path);
    if (!in) throw ConfigError("cannot open " + contexts_path.string());
    std::string line;
    std::size_t line_no = 0;
    std::set<std::string_view> seen_ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 4)
            throw ParseError(contexts_path.string() + ":" + std::to_string(line_no) +
                             ": expected id<TAB>word<TAB>senseId<TAB>context");
        GoldInstance instance;
        instance.id = std::string(fields[0]);
        instance.target = std::string(fields[1]);
        instance.gold_sense = parse_number<int>(fields[2], "gold sense id");
        instance.context = tokenize(fields[3]);
        dataset.instances.push_back(std::move(instance));
    }
    for (const auto& instance : dataset.instances)
        if (!seen_ids.insert(instance.id).second)
            throw ParseError(contexts_path.string() + ": duplicate instance id '" + instance.id +
                             "'");
    check_integrity(dataset);
    return dataset;
}

GoldDataset load_semeval13(const std::filesystem::path& dir) {
    const auto contexts_path = dir / "contexts.tsv";
    const auto key_path = dir / "gold.key";
    require_file(contexts_path);
    require_file(key_path);

    // Gold key lines: "<lemma> <instanceId> <label>[/weight] ...". The
    // crisp label is the heaviest one; ties keep the first listed.
    std::map<std::string, std::string> crisp_label;
    std::map<std::string, std::set<std::string>> labels_per_lemma;
    {
        std::ifstream in(key_path);
        if (!in) throw ConfigError("cannot open " + key_path.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto fields = tokenize(line);
            if (fields.empty()) continue;
            if (fields.size() < 3)
                throw ParseError(key_path.string() + ":" + std::to_string(line_no) +
                                 ": expected lemma, instance id and at least one label");
            const std::string& lemma = fields[0];
            const std::string& id = fields[1];
            std::string best_label;
            double best_weight = -1.0;
            for (std::size_t i = 2; i < fields.size(); ++i) {
                std::string_view entry = fields[i];
                double weight = 1.0;
                auto slash = entry.rfind('/');
                if (slash != std::string_view::npos && slash + 1 < entry.size()) {
                    weight = parse_number<double>(entry.substr(slash + 1), "label weight");
                    entry = entry.substr(0, slash);
                }
                labels_per_lemma[lemma].insert(std::string(entry));
                if (weight > best_weight) {
                    best_weight = weight;
                    best_label = std::string(entry);
                }
            }
            if (!crisp_label.emplace(id, best_label).second)
                throw ParseError(key_path.string() + ":" + std::to_string(line_no) +
                                 ": duplicate instance id '" + id + "'");
        }
    }

    // Label strings become sense ids in lexicographic order.
    GoldDataset dataset;
    std::map<std::string, std::map<std::string, int>> label_ids;
    for (const auto& [lemma, labels] : labels_per_lemma) {
        std::vector<SenseCluster> clusters;
        int next_id = 0;
        for (const auto& label : labels) {
            label_ids[lemma][label] = next_id;
            SenseCluster cluster;
            cluster.word = lemma;
            cluster.sense_id = next_id;
            clusters.push_back(std::move(cluster));
            ++next_id;
        }
        dataset.gold_inventory.set_entry(lemma, std::move(clusters));
    }

    std::ifstream in(contexts_path);
    if (!in) throw ConfigError("cannot open " + contexts_path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw ParseError(contexts_path.string() + ":" + std::to_string(line_no) +
                             ": expected id<TAB>lemma<TAB>context");
        GoldInstance instance;
        instance.id = std::string(fields[0]);
        instance.target = std::string(fields[1]);
        instance.context = tokenize(fields[2]);
        auto label = crisp_label.find(instance.id);
        if (label == crisp_label.end())
            throw ParseError(contexts_path.string() + ":" + std::to_string(line_no) +
                             ": instance '" + instance.id + "' has no gold label");
        instance.gold_sense = label_ids.at(instance.target).at(label->second);
        dataset.instances.push_back(std::move(instance));
    }
    check_integrity(dataset);
    return dataset;
}

GoldDataset balanced_subset(const GoldDataset& dataset, std::size_t per_sense,
                            std::optional<std::uint64_t> seed) {
    // Group instance indices by (word, sense) in file order.
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
        const auto& instance = dataset.instances[i];
        if (dataset.gold_inventory.senses(instance.target).size() < 2)
            continue;  // monosemous words are excluded
        groups[{instance.target, instance.gold_sense}].push_back(i);
    }

    std::vector<std::size_t> selected;
    for (auto& [key, indices] : groups) {
        if (seed) {
            std::uint64_t state = word_seed(*seed, key.first + "#" + std::to_string(key.second));
            for (std::size_t i = indices.size(); i > 1; --i) {
                state = splitmix64(state);
                std::swap(indices[i - 1], indices[state % i]);
            }
        }
        for (std::size_t i = 0; i < std::min(per_sense, indices.size()); ++i)
            selected.push_back(indices[i]);
    }
    std::sort(selected.begin(), selected.end());

    GoldDataset subset;
    subset.gold_inventory = dataset.gold_inventory;
    subset.instances.reserve(selected.size());
    for (std::size_t i : selected) subset.instances.push_back(dataset.instances[i]);
    return subset;
}

}  // namespace sensevec
