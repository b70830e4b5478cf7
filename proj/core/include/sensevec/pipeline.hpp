#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "sensevec/eval.hpp"
#include "sensevec/induction.hpp"
#include "sensevec/knn.hpp"
#include "sensevec/pooling.hpp"
#include "sensevec/wsd.hpp"

namespace sensevec {

// End-to-end run: nearest-neighbor graph, sense induction, vector pooling
// and (optionally) evaluation. A stage is skipped when its artifact is
// supplied as an input.
struct PipelineConfig {
    std::filesystem::path embeddings;  // required
    VectorFormat embeddings_format = VectorFormat::text;
    std::optional<std::filesystem::path> context_embeddings;
    VectorFormat context_embeddings_format = VectorFormat::text;

    std::optional<std::filesystem::path> graph;          // skips the knn stage
    std::optional<std::filesystem::path> inventory;      // skips the induction stage
    std::optional<std::filesystem::path> sense_vectors;  // skips the pooling stage
    VectorFormat sense_vectors_format = VectorFormat::text;

    std::optional<std::filesystem::path> dataset;  // directory; enables evaluation
    std::string dataset_kind = "twsi";             // twsi | semeval
    bool balanced = false;

    std::filesystem::path output_dir = "sensevec-out";

    std::size_t top_n = 200;
    std::size_t block_size = 1000;
    InductionParams induction = InductionParams::coarse();
    PoolingMode pooling = PoolingMode::weighted;
    WsdStrategy strategy = WsdStrategy::similarity;
    std::optional<std::size_t> filter_p = 2;
    unsigned threads = 0;

    // Flat "key = value" file, '#' comments. Unknown keys are errors.
    static PipelineConfig from_file(const std::filesystem::path& path);
    // Applies one key (the config-file vocabulary); flags reuse this.
    void apply(std::string_view key, std::string_view value);
    // Throws ConfigError on missing/invalid inputs. Touches no outputs.
    void validate() const;
};

struct EvaluationOutcome {
    std::size_t instances = 0;
    std::optional<WsdReport> wsd;                 // mapping-based datasets
    std::optional<BaselineReports> baselines;
    std::optional<ClusteringScores> clustering;   // semeval datasets (macro over lemmas)
};

struct EvaluationSetup {
    const SenseInventory* induced = nullptr;  // required for mapping-based scoring
    const SenseVectorStore* store = nullptr;
    const EmbeddingMatrix* words = nullptr;
    const EmbeddingMatrix* contexts = nullptr;
    WsdStrategy strategy = WsdStrategy::similarity;
    std::optional<std::size_t> filter_p = 2;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool clustering_only = false;  // semeval-style scoring
};

EvaluationOutcome evaluate_dataset(const GoldDataset& dataset, const EvaluationSetup& setup);
void write_report_tsv(const std::filesystem::path& path, const EvaluationOutcome& outcome);
void print_report(std::ostream& out, const EvaluationOutcome& outcome);

struct PipelineResult {
    std::filesystem::path graph_path;
    std::filesystem::path inventory_path;
    std::filesystem::path sense_vectors_path;
    std::optional<std::filesystem::path> report_path;

    std::size_t graph_words = 0;
    std::size_t inventory_senses = 0;
    std::size_t sense_vectors = 0;
    std::optional<EvaluationOutcome> evaluation;
};

PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log);

}  // namespace sensevec
