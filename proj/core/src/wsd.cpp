#include "sensevec/wsd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "sensevec/parallel.hpp"

namespace sensevec {

WsdStrategy parse_wsd_strategy(std::string_view name) {
    if (name == "sim" || name == "similarity") return WsdStrategy::similarity;
    if (name == "prob" || name == "probability") return WsdStrategy::probability;
    throw ConfigError("unknown WSD strategy '" + std::string(name) + "' (expected sim|prob)");
}

std::string_view wsd_strategy_name(WsdStrategy strategy) {
    return strategy == WsdStrategy::similarity ? "sim" : "prob";
}

std::vector<double> mean_context_vector(std::span<const std::string> context,
                                        const EmbeddingMatrix& matrix, std::size_t* skipped) {
    std::vector<double> mean(matrix.dim(), 0.0);
    std::size_t found = 0;
    std::size_t missed = 0;
    for (const auto& word : context) {
        auto row = matrix.row_of(word);
        if (!row) {
            ++missed;
            continue;
        }
        auto vec = matrix.row(*row);
        for (std::size_t j = 0; j < mean.size(); ++j)
            mean[j] += static_cast<double>(vec[j]);
        ++found;
    }
    if (skipped) *skipped += missed;
    if (found == 0)
        throw std::invalid_argument("no context word is in the vocabulary");
    for (double& v : mean) v /= static_cast<double>(found);
    return mean;
}

double score_probability(std::span<const double> sense, std::span<const double> context_mean) {
    double x = dot(context_mean, sense);
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double score_similarity(std::span<const double> sense, std::span<const double> context_mean) {
    return cosine(sense, context_mean);
}

namespace {

double score_one(std::span<const double> sense, std::span<const double> context_mean,
                 WsdStrategy strategy) {
    return strategy == WsdStrategy::probability ? score_probability(sense, context_mean)
                                                : score_similarity(sense, context_mean);
}

// Single-word score; 0 for words outside the vocabulary or with a
// degenerate (zero-norm) pairing.
double word_spread(const std::string& word, std::span<const std::vector<double>> senses,
                   const EmbeddingMatrix& matrix, WsdStrategy strategy) {
    auto row = matrix.row_of(word);
    if (!row) return 0.0;
    auto raw = matrix.row(*row);
    std::vector<double> vec(raw.begin(), raw.end());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& sense : senses) {
        double s = score_one(sense, vec, strategy);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return hi - lo;
}

}  // namespace

std::vector<std::string> filter_context(std::span<const std::string> context,
                                        std::span<const std::vector<double>> senses,
                                        const EmbeddingMatrix& matrix, WsdStrategy strategy,
                                        std::size_t p) {
    if (p < 1) throw ConfigError("context filter needs p >= 1");
    if (senses.empty()) throw std::invalid_argument("context filter needs at least one sense");
    if (context.size() <= p)
        return {context.begin(), context.end()};

    std::vector<std::pair<double, std::size_t>> spread(context.size());
    for (std::size_t i = 0; i < context.size(); ++i)
        spread[i] = {word_spread(context[i], senses, matrix, strategy), i};
    // Highest spread first; equal spreads keep original order.
    std::stable_sort(spread.begin(), spread.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::size_t> picked;
    picked.reserve(p);
    for (std::size_t i = 0; i < p; ++i) picked.push_back(spread[i].second);
    std::sort(picked.begin(), picked.end());

    std::vector<std::string> kept;
    kept.reserve(p);
    for (std::size_t idx : picked) kept.push_back(context[idx]);
    return kept;
}

DisambiguationResult disambiguate(const DisambiguationRequest& request,
                                  const SenseVectorStore& store, const EmbeddingMatrix& words,
                                  const EmbeddingMatrix* contexts) {
    if (request.strategy == WsdStrategy::probability && contexts == nullptr)
        throw ConfigError("probability strategy requires a context embedding matrix");
    if (request.filter_p && *request.filter_p < 1)
        throw ConfigError("context filter needs p >= 1");

    DisambiguationResult result;
    result.strategy = request.strategy;
    result.sense_ids = store.senses_of(request.target);
    if (result.sense_ids.empty())
        throw std::out_of_range("target word has no senses: '" + request.target + "'");
    result.scores.assign(result.sense_ids.size(), 0.0);

    std::vector<std::vector<double>> senses;
    senses.reserve(result.sense_ids.size());
    for (int id : result.sense_ids) {
        auto v = store.vector_of(request.target, id);
        senses.emplace_back(v.begin(), v.end());
    }

    const EmbeddingMatrix& source =
        request.strategy == WsdStrategy::probability ? *contexts : words;

    std::vector<std::string> used(request.context.begin(), request.context.end());
    if (request.filter_p)
        used = filter_context(request.context, senses, source, request.strategy,
                              *request.filter_p);

    std::vector<double> mean;
    bool usable = false;
    if (!used.empty()) {
        try {
            mean = mean_context_vector(used, source);
            usable = std::any_of(mean.begin(), mean.end(), [](double v) { return v != 0.0; });
        } catch (const std::invalid_argument&) {
            usable = false;
        }
    }
    if (!usable) {
        // Most-frequent-sense fallback: sense ids are assigned largest
        // cluster first, so the lowest id is the induced MFS.
        result.chosen = result.sense_ids.front();
        result.used_context = std::move(used);
        result.mfs_fallback = true;
        return result;
    }

    std::size_t best = 0;
    for (std::size_t i = 0; i < senses.size(); ++i) {
        result.scores[i] = score_one(senses[i], mean, request.strategy);
        if (result.scores[i] > result.scores[best]) best = i;
    }
    result.chosen = result.sense_ids[best];
    result.used_context = std::move(used);
    return result;
}

BatchStats disambiguate_file(const std::filesystem::path& input,
                             const std::filesystem::path& output, const SenseVectorStore& store,
                             const EmbeddingMatrix& words, const EmbeddingMatrix* contexts,
                             WsdStrategy strategy, std::optional<std::size_t> filter_p,
                             unsigned threads) {
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot open batch file: " + input.string());

    struct Row {
        std::string id;
        std::string target;
        std::vector<std::string> context;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() < 3)
            throw ParseError(input.string() + ":" + std::to_string(line_no) +
                             ": expected id<TAB>target<TAB>context");
        Row row;
        row.id = std::string(fields[0]);
        row.target = std::string(fields[1]);
        for (auto token : split(fields[2], ' ')) {
            token = trim(token);
            if (!token.empty()) row.context.emplace_back(token);
        }
        rows.push_back(std::move(row));
    }

    BatchStats stats;
    stats.instances = rows.size();
    std::vector<std::string> lines(rows.size());
    std::atomic<std::size_t> fallbacks{0};
    std::atomic<std::size_t> unknown{0};
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        DisambiguationRequest request{rows[i].target, rows[i].context, strategy, filter_p};
        try {
            auto result = disambiguate(request, store, words, contexts);
            if (result.mfs_fallback) fallbacks.fetch_add(1, std::memory_order_relaxed);
            double score = result.scores[static_cast<std::size_t>(
                std::find(result.sense_ids.begin(), result.sense_ids.end(), result.chosen) -
                result.sense_ids.begin())];
            lines[i] = rows[i].id + "\t" + SenseKey{rows[i].target, result.chosen}.to_string() +
                       "\t" + format_number(score) + "\n";
        } catch (const std::out_of_range&) {
            unknown.fetch_add(1, std::memory_order_relaxed);
        }
    });
    stats.fallbacks = fallbacks.load();
    stats.unknown_targets = unknown.load();

    std::ofstream out(output, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + output.string());
    for (const auto& l : lines) out << l;
    if (!out) throw std::runtime_error("write failed: " + output.string());
    return stats;
}

}  // namespace sensevec
