#include "sensevec/similarity_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace sensevec {

bool neighbor_order(const WeightedNeighbor& a, const WeightedNeighbor& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.word < b.word;
}

SimilarityGraph::SimilarityGraph(std::size_t top_n) : top_n_(top_n) {
    if (top_n_ < 1) throw ConfigError("similarity graph top_n must be >= 1");
}

std::span<const WeightedNeighbor> SimilarityGraph::neighbors(std::string_view word) const {
    auto it = index_.find(word);
    if (it == index_.end())
        throw std::out_of_range("word not in similarity graph: '" + std::string(word) + "'");
    return lists_[it->second];
}

void SimilarityGraph::set_neighbors(const std::string& word, std::vector<WeightedNeighbor> list) {
    std::erase_if(list, [&](const WeightedNeighbor& n) { return n.word == word; });
    std::sort(list.begin(), list.end(), [](const WeightedNeighbor& a, const WeightedNeighbor& b) {
        if (a.word != b.word) return a.word < b.word;
        return a.weight > b.weight;
    });
    // Collapse duplicate neighbors, keeping the maximum weight.
    auto last = std::unique(list.begin(), list.end(),
                            [](const WeightedNeighbor& a, const WeightedNeighbor& b) {
                                return a.word == b.word;
                            });
    list.erase(last, list.end());
    std::sort(list.begin(), list.end(), neighbor_order);
    if (list.size() > top_n_) list.resize(top_n_);
    list.shrink_to_fit();

    auto it = index_.find(word);
    if (it != index_.end()) {
        lists_[it->second] = std::move(list);
        return;
    }
    index_.emplace(word, words_.size());
    words_.push_back(word);
    lists_.push_back(std::move(list));
}

SimilarityGraph SimilarityGraph::load(const std::filesystem::path& path, std::size_t top_n,
                                      LoadStats* stats) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open similarity graph file: " + path.string());

    // Raw edges are gathered per word first; sorting and truncation happen
    // once per word in set_neighbors.
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<WeightedNeighbor>, StringHash, std::equal_to<>> raw;
    LoadStats local;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() < 3)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected word<TAB>neighbor<TAB>weight");
        std::string word(fields[0]);
        std::string neighbor(fields[1]);
        double weight = parse_number<double>(trim(fields[2]), "edge weight");
        if (!std::isfinite(weight))
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": edge weight must be finite");
        ++local.lines;
        auto [it, inserted] = raw.try_emplace(word);
        if (inserted) order.push_back(word);
        if (neighbor == word) {
            ++local.self_edges_dropped;
            continue;
        }
        auto& list = it->second;
        auto dup = std::find_if(list.begin(), list.end(),
                                [&](const WeightedNeighbor& n) { return n.word == neighbor; });
        if (dup != list.end()) {
            ++local.duplicates_collapsed;
            dup->weight = std::max(dup->weight, weight);
        } else {
            list.push_back({std::move(neighbor), weight});
        }
    }

    SimilarityGraph graph(top_n);
    for (auto& word : order)
        graph.set_neighbors(word, std::move(raw[word]));
    if (stats) *stats = local;
    return graph;
}

void SimilarityGraph::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + path.string());
    std::string line;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (const auto& n : lists_[i]) {
            line = words_[i];
            line += '\t';
            line += n.word;
            line += '\t';
            line += format_number(n.weight);
            line += '\n';
            out << line;
        }
    }
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

bool SimilarityGraph::operator==(const SimilarityGraph& other) const {
    if (words_.size() != other.words_.size()) return false;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        auto it = other.index_.find(words_[i]);
        if (it == other.index_.end()) return false;
        if (lists_[i] != other.lists_[it->second]) return false;
    }
    return true;
}

}  // namespace sensevec
