#include "sensevec/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sensevec {

namespace {

class StageTimer {
public:
    StageTimer(std::ostream& log, std::string name) : log_(log), name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }
    void done(const std::string& message) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
        log_ << name_ << ": " << message << " (" << elapsed << " ms)\n";
    }

private:
    std::ostream& log_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

[[noreturn]] void stage_failure(const std::string& stage, const std::exception& e) {
    throw std::runtime_error(stage + ": " + e.what());
}

std::string format_score(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << v;
    return out.str();
}

void write_wsd_report_row(std::ostream& out, const std::string& name, const WsdReport& r) {
    out << name << '\t' << format_score(r.precision) << '\t' << format_score(r.recall) << '\t'
        << format_score(r.fscore) << '\t' << r.counts.attempted << '\t' << r.counts.correct
        << '\t' << r.counts.total << '\n';
}

}  // namespace

EvaluationOutcome evaluate_dataset(const GoldDataset& dataset, const EvaluationSetup& setup) {
    if (!setup.store || !setup.words)
        throw ConfigError("evaluation needs a sense vector store and word embeddings");
    if (!setup.clustering_only && !setup.induced)
        throw ConfigError("mapping-based evaluation needs the induced inventory");

    Predictor predictor = [&](const GoldInstance& instance) -> std::optional<int> {
        DisambiguationRequest request{instance.target, instance.context, setup.strategy,
                                      setup.filter_p};
        try {
            return disambiguate(request, *setup.store, *setup.words, setup.contexts).chosen;
        } catch (const std::out_of_range&) {
            return std::nullopt;
        }
    };

    EvaluationOutcome outcome;
    outcome.instances = dataset.instances.size();

    if (!setup.clustering_only) {
        auto mapping = map_inventories(*setup.induced, dataset.gold_inventory);
        outcome.wsd = evaluate_wsd(dataset, predictor, mapping, setup.threads);
        outcome.baselines = baselines(dataset, *setup.induced, mapping, setup.seed);
        return outcome;
    }

    // Per-lemma clustering comparison, macro-averaged over lemmas.
    std::map<std::string, std::map<std::string, std::string>> predicted_by_word;
    std::map<std::string, std::map<std::string, std::string>> gold_by_word;
    for (const auto& instance : dataset.instances) {
        auto sense = predictor(instance);
        predicted_by_word[instance.target][instance.id] =
            sense ? std::to_string(*sense) : "<none>";
        gold_by_word[instance.target][instance.id] = std::to_string(instance.gold_sense);
    }
    ClusteringScores mean;
    std::size_t lemmas = 0;
    for (const auto& [word, labels] : predicted_by_word) {
        auto scores = clustering_metrics(labels, gold_by_word[word]);
        mean.nmi += scores.nmi;
        mean.bcubed_precision += scores.bcubed_precision;
        mean.bcubed_recall += scores.bcubed_recall;
        mean.bcubed_f += scores.bcubed_f;
        ++lemmas;
    }
    if (lemmas > 0) {
        mean.nmi /= static_cast<double>(lemmas);
        mean.bcubed_precision /= static_cast<double>(lemmas);
        mean.bcubed_recall /= static_cast<double>(lemmas);
        mean.bcubed_f /= static_cast<double>(lemmas);
    }
    outcome.clustering = mean;
    return outcome;
}

void write_report_tsv(const std::filesystem::path& path, const EvaluationOutcome& outcome) {
    std::ofstream report(path, std::ios::trunc);
    if (!report) throw std::runtime_error("cannot open " + path.string());
    if (outcome.wsd) {
        report << "model\tprecision\trecall\tfscore\tattempted\tcorrect\ttotal\n";
        write_wsd_report_row(report, "wsd", *outcome.wsd);
        write_wsd_report_row(report, "upper_bound", outcome.baselines->upper_bound);
        write_wsd_report_row(report, "mfs_gold", outcome.baselines->mfs_gold);
        write_wsd_report_row(report, "mfs_induced", outcome.baselines->mfs_induced);
        write_wsd_report_row(report, "random", outcome.baselines->random);
    } else if (outcome.clustering) {
        report << "metric\tvalue\n";
        report << "nmi\t" << format_score(outcome.clustering->nmi) << '\n';
        report << "bcubed_precision\t" << format_score(outcome.clustering->bcubed_precision)
               << '\n';
        report << "bcubed_recall\t" << format_score(outcome.clustering->bcubed_recall) << '\n';
        report << "bcubed_f\t" << format_score(outcome.clustering->bcubed_f) << '\n';
    }
    if (!report) throw std::runtime_error("write failed: " + path.string());
}

void print_report(std::ostream& out, const EvaluationOutcome& outcome) {
    if (outcome.wsd) {
        auto row = [&](const std::string& name, const WsdReport& r) {
            out << "  " << std::left << std::setw(14) << name << std::right << "  P "
                << format_score(r.precision) << "  R " << format_score(r.recall) << "  F "
                << format_score(r.fscore) << "  (" << r.counts.correct << "/"
                << r.counts.attempted << " attempted, " << r.counts.total << " total)\n";
        };
        out << "instances: " << outcome.instances << '\n';
        row("wsd", *outcome.wsd);
        row("upper_bound", outcome.baselines->upper_bound);
        row("mfs_gold", outcome.baselines->mfs_gold);
        row("mfs_induced", outcome.baselines->mfs_induced);
        row("random", outcome.baselines->random);
    } else if (outcome.clustering) {
        out << "instances: " << outcome.instances << '\n';
        out << "  nmi              " << format_score(outcome.clustering->nmi) << '\n';
        out << "  bcubed_precision " << format_score(outcome.clustering->bcubed_precision) << '\n';
        out << "  bcubed_recall    " << format_score(outcome.clustering->bcubed_recall) << '\n';
        out << "  bcubed_f         " << format_score(outcome.clustering->bcubed_f) << '\n';
    }
}

PipelineConfig PipelineConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        auto eq = content.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key = value");
        config.apply(trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
    }
    return config;
}

void PipelineConfig::apply(std::string_view key, std::string_view value) {
    auto path_of = [&] { return std::filesystem::path(std::string(value)); };
    if (key == "embeddings") {
        embeddings = path_of();
    } else if (key == "embeddings-format") {
        embeddings_format = parse_vector_format(value);
    } else if (key == "context-embeddings") {
        context_embeddings = path_of();
    } else if (key == "context-embeddings-format") {
        context_embeddings_format = parse_vector_format(value);
    } else if (key == "graph") {
        graph = path_of();
    } else if (key == "inventory") {
        inventory = path_of();
    } else if (key == "sense-vectors") {
        sense_vectors = path_of();
    } else if (key == "sense-vectors-format") {
        sense_vectors_format = parse_vector_format(value);
    } else if (key == "dataset") {
        dataset = path_of();
    } else if (key == "dataset-kind") {
        if (value != "twsi" && value != "semeval")
            throw ConfigError("dataset-kind must be twsi or semeval");
        dataset_kind = std::string(value);
    } else if (key == "balanced") {
        if (value == "true" || value == "1")
            balanced = true;
        else if (value == "false" || value == "0")
            balanced = false;
        else
            throw ConfigError("balanced must be true or false");
    } else if (key == "output") {
        output_dir = path_of();
    } else if (key == "topn") {
        top_n = parse_number<std::size_t>(value, "topn");
    } else if (key == "block") {
        block_size = parse_number<std::size_t>(value, "block");
    } else if (key == "N") {
        induction.network_size = parse_number<std::size_t>(value, "N");
    } else if (key == "n") {
        induction.connectivity = parse_number<std::size_t>(value, "n");
    } else if (key == "k") {
        induction.min_cluster_size = parse_number<std::size_t>(value, "k");
    } else if (key == "iterations") {
        induction.max_iterations = parse_number<std::size_t>(value, "iterations");
    } else if (key == "seed") {
        induction.seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "preset") {
        std::uint64_t seed = induction.seed;
        if (value == "fine")
            induction = InductionParams::fine();
        else if (value == "medium")
            induction = InductionParams::medium();
        else if (value == "coarse")
            induction = InductionParams::coarse();
        else
            throw ConfigError("preset must be fine, medium or coarse");
        induction.seed = seed;
    } else if (key == "pooling") {
        pooling = parse_pooling_mode(value);
    } else if (key == "strategy") {
        strategy = parse_wsd_strategy(value);
    } else if (key == "filter") {
        if (value == "none")
            filter_p = std::nullopt;
        else
            filter_p = parse_number<std::size_t>(value, "filter");
    } else if (key == "threads") {
        threads = parse_number<unsigned>(value, "threads");
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void PipelineConfig::validate() const {
    if (embeddings.empty())
        throw ConfigError("no embeddings path configured");
    auto require = [](const std::filesystem::path& p, std::string_view what) {
        if (!std::filesystem::exists(p))
            throw ConfigError(std::string(what) + " not found: " + p.string());
    };
    require(embeddings, "embeddings file");
    if (context_embeddings) require(*context_embeddings, "context embeddings file");
    if (graph) require(*graph, "similarity graph file");
    if (inventory) require(*inventory, "inventory file");
    if (sense_vectors) require(*sense_vectors, "sense vector file");
    if (dataset) require(*dataset, "dataset directory");
    if (top_n < 1) throw ConfigError("topn must be >= 1");
    if (block_size < 1) throw ConfigError("block must be >= 1");
    if (filter_p && *filter_p < 1) throw ConfigError("filter must be >= 1 (or none)");
    if (strategy == WsdStrategy::probability && !context_embeddings)
        throw ConfigError("probability strategy requires context-embeddings");
    induction.validate();
}

PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);

    PipelineResult result;

    std::optional<EmbeddingMatrix> words;
    std::optional<EmbeddingMatrix> contexts;
    try {
        StageTimer timer(log, "embeddings");
        words.emplace(EmbeddingMatrix::load(config.embeddings, config.embeddings_format,
                                            MatrixKind::word));
        std::string message =
            std::to_string(words->size()) + " words, dim " + std::to_string(words->dim());
        if (config.context_embeddings) {
            contexts.emplace(EmbeddingMatrix::load(*config.context_embeddings,
                                                   config.context_embeddings_format,
                                                   MatrixKind::context));
            if (contexts->dim() != words->dim())
                throw ConfigError("context embeddings dimensionality differs from word embeddings");
            message += ", context matrix loaded";
        }
        timer.done(message);
    } catch (const std::exception& e) {
        stage_failure("embeddings", e);
    }

    std::optional<SimilarityGraph> graph;
    try {
        StageTimer timer(log, "graph");
        if (config.graph) {
            SimilarityGraph::LoadStats stats;
            graph.emplace(SimilarityGraph::load(*config.graph, config.top_n, &stats));
            result.graph_path = *config.graph;
            std::string message = "imported, " + std::to_string(graph->size()) + " words";
            if (stats.self_edges_dropped > 0)
                message += ", " + std::to_string(stats.self_edges_dropped) + " self-edges dropped";
            timer.done(message);
        } else {
            graph.emplace(build_knn_graph(
                *words, {config.top_n, config.block_size, config.threads}));
            result.graph_path = config.output_dir / "graph.tsv";
            graph->save(result.graph_path);
            timer.done("built, " + std::to_string(graph->size()) + " words, topn " +
                       std::to_string(config.top_n));
        }
        result.graph_words = graph->size();
    } catch (const std::exception& e) {
        stage_failure("graph", e);
    }

    std::optional<SenseInventory> inventory;
    try {
        StageTimer timer(log, "induction");
        if (config.inventory) {
            inventory.emplace(SenseInventory::load(*config.inventory));
            result.inventory_path = *config.inventory;
            timer.done("imported, " + std::to_string(inventory->sense_count()) + " senses for " +
                       std::to_string(inventory->word_count()) + " words");
        } else {
            InductionStats stats;
            inventory.emplace(induce_inventory(*graph, config.induction, std::nullopt,
                                               config.threads, &stats));
            result.inventory_path = config.output_dir / "inventory.tsv";
            inventory->save(result.inventory_path);
            timer.done("induced, " + std::to_string(stats.clusters_kept) + " senses kept, " +
                       std::to_string(stats.clusters_dropped) + " clusters dropped, " +
                       std::to_string(stats.words_without_senses) + " words without senses");
        }
        result.inventory_senses = inventory->sense_count();
    } catch (const std::exception& e) {
        stage_failure("induction", e);
    }

    std::optional<SenseVectorStore> store;
    try {
        StageTimer timer(log, "pooling");
        if (config.sense_vectors) {
            auto matrix = EmbeddingMatrix::load(*config.sense_vectors,
                                                config.sense_vectors_format, MatrixKind::word);
            store.emplace(SenseVectorStore::from_matrix(matrix, config.sense_vectors->string()));
            result.sense_vectors_path = *config.sense_vectors;
            timer.done("imported, " + std::to_string(store->size()) + " sense vectors");
        } else {
            PoolReport report;
            store.emplace(SenseVectorStore::build(*inventory, *words, config.pooling, &report));
            if (store->size() == 0)
                throw std::runtime_error("no sense vector could be pooled");
            result.sense_vectors_path = config.output_dir / "senses.txt";
            store->to_matrix().save(result.sense_vectors_path, VectorFormat::text);
            timer.done(std::to_string(report.clusters_pooled) + " senses pooled (" +
                       std::string(pooling_mode_name(config.pooling)) + "), " +
                       std::to_string(report.clusters_skipped) + " skipped, " +
                       std::to_string(report.members_missing) + " members missing");
        }
        result.sense_vectors = store->size();
    } catch (const std::exception& e) {
        stage_failure("pooling", e);
    }

    if (!config.dataset) return result;

    try {
        StageTimer timer(log, "evaluation");
        GoldDataset dataset = config.dataset_kind == "twsi" ? load_twsi(*config.dataset)
                                                            : load_semeval13(*config.dataset);
        if (config.balanced) dataset = balanced_subset(dataset);

        EvaluationSetup setup;
        setup.induced = &*inventory;
        setup.store = &*store;
        setup.words = &*words;
        setup.contexts = contexts ? &*contexts : nullptr;
        setup.strategy = config.strategy;
        setup.filter_p = config.filter_p;
        setup.seed = config.induction.seed;
        setup.threads = config.threads;
        setup.clustering_only = config.dataset_kind == "semeval";

        result.evaluation = evaluate_dataset(dataset, setup);
        result.report_path = config.output_dir / "eval_report.tsv";
        write_report_tsv(*result.report_path, *result.evaluation);
        if (result.evaluation->wsd)
            timer.done("twsi, " + std::to_string(dataset.instances.size()) + " instances, F " +
                       format_score(result.evaluation->wsd->fscore));
        else
            timer.done("semeval, " + std::to_string(dataset.instances.size()) +
                       " instances, NMI " + format_score(result.evaluation->clustering->nmi));
    } catch (const std::exception& e) {
        stage_failure("evaluation", e);
    }
    return result;
}

}  // namespace sensevec
