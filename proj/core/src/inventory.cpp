#include "sensevec/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace sensevec {

void InductionParams::validate() const {
    if (connectivity < 1 || network_size < connectivity)
        throw ConfigError("induction: need N >= n >= 1 (N=" + std::to_string(network_size) +
                          ", n=" + std::to_string(connectivity) + ")");
    if (min_cluster_size < 1) throw ConfigError("induction: min cluster size must be >= 1");
    if (max_iterations < 1) throw ConfigError("induction: max iterations must be >= 1");
}

std::size_t SenseInventory::sense_count() const noexcept {
    std::size_t total = 0;
    for (const auto& entry : entries_) total += entry.size();
    return total;
}

std::span<const SenseCluster> SenseInventory::senses(std::string_view word) const {
    auto it = index_.find(word);
    if (it == index_.end())
        throw std::out_of_range("word not in sense inventory: '" + std::string(word) + "'");
    return entries_[it->second];
}

void SenseInventory::set_entry(const std::string& word, std::vector<SenseCluster> clusters) {
    std::set<int> ids;
    for (auto& cluster : clusters) {
        if (cluster.word != word)
            throw std::invalid_argument("cluster word '" + cluster.word +
                                        "' does not match entry word '" + word + "'");
        if (!ids.insert(cluster.sense_id).second)
            throw ParseError("duplicate sense id " + std::to_string(cluster.sense_id) +
                             " for word '" + word + "'");
        std::sort(cluster.members.begin(), cluster.members.end(), neighbor_order);
        std::set<std::string_view> seen;
        for (const auto& member : cluster.members) {
            if (member.word == word)
                throw ParseError("word '" + word + "' occurs inside its own sense cluster");
            if (!seen.insert(member.word).second)
                throw ParseError("duplicate member '" + member.word + "' in sense " +
                                 std::to_string(cluster.sense_id) + " of '" + word + "'");
        }
    }
    auto it = index_.find(word);
    if (it != index_.end()) {
        entries_[it->second] = std::move(clusters);
        return;
    }
    index_.emplace(word, words_.size());
    words_.push_back(word);
    entries_.push_back(std::move(clusters));
}

SenseInventory SenseInventory::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open inventory file: " + path.string());

    SenseInventory inv;  // external by construction
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<SenseCluster>, StringHash, std::equal_to<>> raw;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected word<TAB>senseId<TAB>members");
        SenseCluster cluster;
        cluster.word = std::string(fields[0]);
        cluster.sense_id = parse_number<int>(fields[1], "sense id");
        if (trim(fields[2]).empty())
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": empty member list");
        for (auto part : split(fields[2], ',')) {
            part = trim(part);
            auto colon = part.rfind(':');
            if (colon == std::string_view::npos || colon == 0 || colon + 1 == part.size())
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": malformed member '" + std::string(part) + "'");
            double weight = parse_number<double>(part.substr(colon + 1), "member weight");
            if (!std::isfinite(weight))
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": non-finite member weight");
            cluster.members.push_back({std::string(part.substr(0, colon)), weight});
        }
        auto [it, inserted] = raw.try_emplace(cluster.word);
        if (inserted) order.push_back(cluster.word);
        it->second.push_back(std::move(cluster));
    }
    for (auto& word : order)
        inv.set_entry(word, std::move(raw[word]));
    return inv;
}

void SenseInventory::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + path.string());
    std::string line;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (const auto& cluster : entries_[i]) {
            line = words_[i];
            line += '\t';
            line += std::to_string(cluster.sense_id);
            line += '\t';
            bool first = true;
            for (const auto& member : cluster.members) {
                if (!first) line += ',';
                line += member.word;
                line += ':';
                line += format_number(member.weight);
                first = false;
            }
            line += '\n';
            out << line;
        }
    }
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

double SenseInventory::average_polysemy() const {
    std::size_t words_with_senses = 0;
    std::size_t senses = 0;
    for (const auto& entry : entries_) {
        if (entry.empty()) continue;
        ++words_with_senses;
        senses += entry.size();
    }
    return words_with_senses == 0 ? 0.0
                                  : static_cast<double>(senses) / static_cast<double>(words_with_senses);
}

// Words without senses cannot be expressed in the TSV format, so equality
// compares only words that carry at least one cluster.
bool SenseInventory::operator==(const SenseInventory& other) const {
    auto nonempty = [](const SenseInventory& inv) {
        std::size_t n = 0;
        for (const auto& e : inv.entries_)
            if (!e.empty()) ++n;
        return n;
    };
    if (nonempty(*this) != nonempty(other)) return false;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (entries_[i].empty()) continue;
        auto it = other.index_.find(words_[i]);
        if (it == other.index_.end()) return false;
        if (entries_[i] != other.entries_[it->second]) return false;
    }
    return true;
}

}  // namespace sensevec
