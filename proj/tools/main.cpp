// sensevec: turns word embeddings into sense embeddings by clustering
// ego-networks of nearest neighbors, and disambiguates words in context
// with the resulting sense vectors.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sensevec/eval.hpp"
#include "sensevec/induction.hpp"
#include "sensevec/knn.hpp"
#include "sensevec/pipeline.hpp"
#include "sensevec/pooling.hpp"
#include "sensevec/util.hpp"
#include "sensevec/wsd.hpp"

namespace {

using namespace sensevec;

std::vector<std::string> tokenize_context(const std::string& text) {
    std::vector<std::string> tokens;
    for (auto part : split(text, ' ')) {
        part = trim(part);
        if (!part.empty()) tokens.emplace_back(part);
    }
    return tokens;
}

EmbeddingMatrix load_matrix(const std::string& path, const std::string& format, MatrixKind kind) {
    return EmbeddingMatrix::load(path, parse_vector_format(format), kind);
}

std::optional<std::size_t> parse_filter(const std::string& value) {
    if (value.empty() || value == "none") return std::nullopt;
    auto p = parse_number<std::size_t>(value, "filter");
    if (p < 1) throw ConfigError("filter must be >= 1 (or none)");
    return p;
}

int cmd_graph_build(const std::string& embeddings, const std::string& format, std::size_t topn,
                    std::size_t block, unsigned threads, const std::string& output) {
    auto matrix = load_matrix(embeddings, format, MatrixKind::word);
    std::cerr << "loaded " << matrix.size() << " vectors of dim " << matrix.dim() << "\n";
    auto graph = build_knn_graph(matrix, {topn, block, threads});
    graph.save(output);
    std::cerr << "graph: " << graph.size() << " words, topn " << topn << " -> " << output << "\n";
    return 0;
}

int cmd_graph_import(const std::string& input, std::size_t topn, const std::string& output) {
    SimilarityGraph::LoadStats stats;
    auto graph = SimilarityGraph::load(input, topn, &stats);
    graph.save(output);
    std::cerr << "graph: " << graph.size() << " words from " << stats.lines << " edges";
    if (stats.self_edges_dropped > 0)
        std::cerr << ", " << stats.self_edges_dropped << " self-edges dropped";
    if (stats.duplicates_collapsed > 0)
        std::cerr << ", " << stats.duplicates_collapsed << " duplicate edges collapsed";
    std::cerr << " -> " << output << "\n";
    return 0;
}

struct InduceArgs {
    std::string graph;
    std::string preset;
    bool explicit_params = false;  // --N/--n/--k given on the command line
    InductionParams params = InductionParams::coarse();
    std::string targets_file;
    unsigned threads = 0;
    std::string output;
};

int cmd_induce(InduceArgs args) {
    if (!args.preset.empty()) {
        if (args.explicit_params)
            throw ConfigError("--preset cannot be combined with --N/--n/--k");
        auto seed = args.params.seed;
        auto iterations = args.params.max_iterations;
        if (args.preset == "fine")
            args.params = InductionParams::fine();
        else if (args.preset == "medium")
            args.params = InductionParams::medium();
        else if (args.preset == "coarse")
            args.params = InductionParams::coarse();
        else
            throw ConfigError("--preset must be fine, medium or coarse");
        args.params.seed = seed;
        args.params.max_iterations = iterations;
    }
    args.params.validate();
    auto graph = SimilarityGraph::load(args.graph, args.params.network_size);
    std::optional<std::vector<std::string>> targets;
    if (!args.targets_file.empty()) {
        std::ifstream in(args.targets_file);
        if (!in) throw ConfigError("cannot open targets file: " + args.targets_file);
        targets.emplace();
        std::string line;
        while (std::getline(in, line)) {
            auto word = trim(line);
            if (!word.empty()) targets->emplace_back(word);
        }
    }
    InductionStats stats;
    auto inventory = induce_inventory(graph, args.params, targets, args.threads, &stats);
    inventory.save(args.output);
    std::cerr << "induced " << stats.clusters_kept << " senses over " << stats.words_processed
              << " words (" << stats.clusters_dropped << " clusters dropped, "
              << stats.words_without_senses << " words without senses) -> " << args.output
              << "\n";
    return 0;
}

int cmd_pool(const std::string& inventory_path, const std::string& embeddings,
             const std::string& format, const std::string& mode, const std::string& output,
             const std::string& output_format) {
    auto inventory = SenseInventory::load(inventory_path);
    auto matrix = load_matrix(embeddings, format, MatrixKind::word);
    PoolReport report;
    auto store = SenseVectorStore::build(inventory, matrix, parse_pooling_mode(mode), &report);
    if (store.size() == 0) throw std::runtime_error("no sense vector could be pooled");
    store.to_matrix().save(output, parse_vector_format(output_format));
    std::cerr << "pooled " << report.clusters_pooled << " sense vectors ("
              << report.clusters_skipped << " skipped, " << report.members_missing
              << " members missing) -> " << output << "\n";
    return 0;
}

struct WsdArgs {
    std::string senses;
    std::string senses_format = "text";
    std::string embeddings;
    std::string format = "text";
    std::string context_embeddings;
    std::string context_format = "text";
    std::string strategy = "sim";
    std::string filter = "2";
    std::string target;
    std::string context;
    std::string batch;
    std::string output;
    unsigned threads = 0;
};

int cmd_wsd(const WsdArgs& args) {
    auto store = SenseVectorStore::from_matrix(
        load_matrix(args.senses, args.senses_format, MatrixKind::word), args.senses);
    auto words = load_matrix(args.embeddings, args.format, MatrixKind::word);
    std::optional<EmbeddingMatrix> contexts;
    if (!args.context_embeddings.empty())
        contexts = load_matrix(args.context_embeddings, args.context_format, MatrixKind::context);

    auto strategy = parse_wsd_strategy(args.strategy);
    auto filter_p = parse_filter(args.filter);

    if (!args.batch.empty()) {
        if (args.output.empty()) throw ConfigError("--batch needs --output");
        auto stats = disambiguate_file(args.batch, args.output, store, words,
                                       contexts ? &*contexts : nullptr, strategy, filter_p,
                                       args.threads);
        std::cerr << "disambiguated " << stats.instances << " instances (" << stats.fallbacks
                  << " fallbacks, " << stats.unknown_targets << " unknown targets) -> "
                  << args.output << "\n";
        return 0;
    }

    if (args.target.empty()) throw ConfigError("need --target (or --batch)");
    DisambiguationRequest request{args.target, tokenize_context(args.context), strategy,
                                  filter_p};
    auto result = disambiguate(request, store, words, contexts ? &*contexts : nullptr);
    std::cout << SenseKey{args.target, result.chosen}.to_string() << "\n";
    for (std::size_t i = 0; i < result.sense_ids.size(); ++i)
        std::cout << "  sense " << result.sense_ids[i] << ": score "
                  << format_number(result.scores[i]) << "\n";
    if (result.mfs_fallback)
        std::cout << "  (no usable context; most frequent sense returned)\n";
    else {
        std::cout << "  context used:";
        for (const auto& word : result.used_context) std::cout << ' ' << word;
        std::cout << "\n";
    }
    return 0;
}

struct EvalArgs {
    std::string dir;
    std::string dataset = "twsi";
    bool balanced = false;
    std::string inventory;
    std::string embeddings;
    std::string format = "text";
    std::string context_embeddings;
    std::string context_format = "text";
    std::string mode = "weighted";
    std::string strategy = "sim";
    std::string filter = "2";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string output;
};

int cmd_eval(const EvalArgs& args) {
    if (args.dataset != "twsi" && args.dataset != "semeval")
        throw ConfigError("--dataset must be twsi or semeval");
    GoldDataset dataset =
        args.dataset == "twsi" ? load_twsi(args.dir) : load_semeval13(args.dir);
    if (args.balanced) dataset = balanced_subset(dataset);
    std::cerr << "dataset: " << dataset.instances.size() << " instances, "
              << dataset.gold_inventory.word_count() << " words\n";

    auto inventory = SenseInventory::load(args.inventory);
    auto words = load_matrix(args.embeddings, args.format, MatrixKind::word);
    std::optional<EmbeddingMatrix> contexts;
    if (!args.context_embeddings.empty())
        contexts = load_matrix(args.context_embeddings, args.context_format, MatrixKind::context);

    PoolReport pool_report;
    auto store =
        SenseVectorStore::build(inventory, words, parse_pooling_mode(args.mode), &pool_report);
    if (store.size() == 0) throw std::runtime_error("no sense vector could be pooled");
    std::cerr << "store: " << store.size() << " sense vectors (" << pool_report.clusters_skipped
              << " clusters skipped)\n";

    EvaluationSetup setup;
    setup.induced = &inventory;
    setup.store = &store;
    setup.words = &words;
    setup.contexts = contexts ? &*contexts : nullptr;
    setup.strategy = parse_wsd_strategy(args.strategy);
    setup.filter_p = parse_filter(args.filter);
    setup.seed = args.seed;
    setup.threads = args.threads;
    setup.clustering_only = args.dataset == "semeval";

    auto outcome = evaluate_dataset(dataset, setup);
    print_report(std::cout, outcome);
    if (!args.output.empty()) {
        write_report_tsv(args.output, outcome);
        std::cerr << "report -> " << args.output << "\n";
    }
    return 0;
}

int cmd_inspect_word(const std::string& word, const std::string& embeddings,
                     const std::string& format, const std::string& graph_path,
                     const std::string& inventory_path, std::size_t topk) {
    if (embeddings.empty() == graph_path.empty())
        throw ConfigError("need exactly one of --embeddings or --graph");
    if (!embeddings.empty()) {
        auto matrix = load_matrix(embeddings, format, MatrixKind::word);
        auto query = matrix.row_of(word);
        if (!query) throw std::runtime_error("word not in vocabulary: '" + word + "'");
        std::vector<WeightedNeighbor> scored;
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            if (i == *query) continue;
            scored.push_back({matrix.token(i), cosine(matrix.row(i), matrix.row(*query))});
        }
        std::sort(scored.begin(), scored.end(), neighbor_order);
        for (std::size_t i = 0; i < std::min(topk, scored.size()); ++i)
            std::cout << scored[i].word << '\t' << format_number(scored[i].weight) << "\n";
    } else {
        auto graph = SimilarityGraph::load(graph_path, topk);
        for (const auto& n : graph.neighbors(word))
            std::cout << n.word << '\t' << format_number(n.weight) << "\n";
    }
    if (!inventory_path.empty()) {
        auto inventory = SenseInventory::load(inventory_path);
        if (inventory.contains(word)) {
            for (const auto& cluster : inventory.senses(word)) {
                std::cout << SenseKey{word, cluster.sense_id}.to_string() << ":";
                for (const auto& member : cluster.members) std::cout << ' ' << member.word;
                std::cout << "\n";
            }
        }
    }
    return 0;
}

int cmd_inspect_sense(const std::string& key_text, const std::string& senses,
                      const std::string& senses_format, const std::string& inventory_path,
                      std::size_t topk) {
    auto key = SenseKey::parse(key_text);
    auto store = SenseVectorStore::from_matrix(
        load_matrix(senses, senses_format, MatrixKind::word), senses);
    if (!inventory_path.empty()) {
        auto inventory = SenseInventory::load(inventory_path);
        if (inventory.contains(key.word)) {
            for (const auto& cluster : inventory.senses(key.word)) {
                if (cluster.sense_id != key.sense_id) continue;
                std::cout << "members:";
                for (const auto& member : cluster.members) std::cout << ' ' << member.word;
                std::cout << "\n";
            }
        }
    }
    std::cout << "nearest senses:\n";
    for (const auto& [neighbor, weight] : store.sense_neighbors(key.word, key.sense_id, topk))
        std::cout << "  " << neighbor.to_string() << '\t' << format_number(weight) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sense embeddings from word embeddings via ego-network clustering"};
    app.require_subcommand(1);
    std::function<int()> action;

    // graph build | graph import
    auto* graph_cmd = app.add_subcommand("graph", "build or import the word similarity graph");
    graph_cmd->require_subcommand(1);
    {
        auto* build = graph_cmd->add_subcommand("build", "exact blocked kNN over embeddings");
        auto embeddings = std::make_shared<std::string>();
        auto format = std::make_shared<std::string>("text");
        auto topn = std::make_shared<std::size_t>(200);
        auto block = std::make_shared<std::size_t>(1000);
        auto threads = std::make_shared<unsigned>(0);
        auto output = std::make_shared<std::string>();
        build->add_option("--embeddings", *embeddings, "word embedding file")->required();
        build->add_option("--format", *format, "text|binary (default text)");
        build->add_option("--topn", *topn, "neighbors per word (default 200)");
        build->add_option("--block", *block, "rows per block (default 1000)");
        build->add_option("--threads", *threads, "worker threads (default: all cores)");
        build->add_option("--output", *output, "graph TSV to write")->required();
        build->callback([=, &action] {
            action = [=] {
                return cmd_graph_build(*embeddings, *format, *topn, *block, *threads, *output);
            };
        });

        auto* import = graph_cmd->add_subcommand("import", "normalize an external graph TSV");
        auto input = std::make_shared<std::string>();
        auto itopn = std::make_shared<std::size_t>(200);
        auto ioutput = std::make_shared<std::string>();
        import->add_option("--input", *input, "TSV word<TAB>neighbor<TAB>weight")->required();
        import->add_option("--topn", *itopn, "neighbors kept per word (default 200)");
        import->add_option("--output", *ioutput, "graph TSV to write")->required();
        import->callback([=, &action] {
            action = [=] { return cmd_graph_import(*input, *itopn, *ioutput); };
        });
    }

    // induce
    {
        auto* induce = app.add_subcommand("induce", "induce a sense inventory from the graph");
        auto args = std::make_shared<InduceArgs>();
        induce->add_option("--graph", args->graph, "similarity graph TSV")->required();
        induce->add_option("--preset", args->preset, "fine|medium|coarse (default coarse)");
        induce->add_option("--N", args->params.network_size, "ego-network size (default 200)");
        induce->add_option("--n", args->params.connectivity,
                           "ego-network connectivity (default 200)");
        induce->add_option("--k", args->params.min_cluster_size,
                           "minimum cluster size (default 15)");
        induce->add_option("--iterations", args->params.max_iterations,
                           "clustering sweep cap (default 20)");
        induce->add_option("--seed", args->params.seed, "random seed (default 0)");
        induce->add_option("--targets", args->targets_file, "only induce these words (one per line)");
        induce->add_option("--threads", args->threads, "worker threads (default: all cores)");
        induce->add_option("--output", args->output, "inventory TSV to write")->required();
        induce->callback([=, &action] {
            args->explicit_params = induce->count("--N") > 0 || induce->count("--n") > 0 ||
                                    induce->count("--k") > 0;
            action = [=] { return cmd_induce(*args); };
        });
    }

    // pool
    {
        auto* pool = app.add_subcommand("pool", "compute sense vectors from an inventory");
        auto inventory = std::make_shared<std::string>();
        auto embeddings = std::make_shared<std::string>();
        auto format = std::make_shared<std::string>("text");
        auto mode = std::make_shared<std::string>("weighted");
        auto output = std::make_shared<std::string>();
        auto output_format = std::make_shared<std::string>("text");
        pool->add_option("--inventory", *inventory, "inventory TSV")->required();
        pool->add_option("--embeddings", *embeddings, "word embedding file")->required();
        pool->add_option("--format", *format, "text|binary (default text)");
        pool->add_option("--mode", *mode, "weighted|unweighted (default weighted)");
        pool->add_option("--output", *output, "sense vector file to write")->required();
        pool->add_option("--output-format", *output_format, "text|binary (default text)");
        pool->callback([=, &action] {
            action = [=] {
                return cmd_pool(*inventory, *embeddings, *format, *mode, *output, *output_format);
            };
        });
    }

    // wsd
    {
        auto* wsd = app.add_subcommand("wsd", "disambiguate words in context");
        auto args = std::make_shared<WsdArgs>();
        wsd->add_option("--senses", args->senses, "sense vector file (word#senseId keys)")
            ->required();
        wsd->add_option("--senses-format", args->senses_format, "text|binary (default text)");
        wsd->add_option("--embeddings", args->embeddings, "word embedding file")->required();
        wsd->add_option("--format", args->format, "text|binary (default text)");
        wsd->add_option("--context-embeddings", args->context_embeddings,
                        "context embedding file (needed for --strategy prob)");
        wsd->add_option("--context-format", args->context_format, "text|binary (default text)");
        wsd->add_option("--strategy", args->strategy, "sim|prob (default sim)");
        wsd->add_option("--filter", args->filter,
                        "keep the p most discriminative context words; none disables (default 2)");
        wsd->add_option("--target", args->target, "word to disambiguate");
        wsd->add_option("--context", args->context, "context words, space separated");
        wsd->add_option("--batch", args->batch, "TSV id<TAB>target<TAB>context");
        wsd->add_option("--output", args->output, "output TSV for --batch");
        wsd->add_option("--threads", args->threads, "worker threads for --batch");
        wsd->callback([=, &action] { action = [=] { return cmd_wsd(*args); }; });
    }

    // eval
    {
        auto* eval = app.add_subcommand("eval", "score WSD against a gold dataset");
        auto args = std::make_shared<EvalArgs>();
        eval->add_option("--dir", args->dir, "dataset directory")->required();
        eval->add_option("--dataset", args->dataset, "twsi|semeval (default twsi)");
        eval->add_flag("--balanced", args->balanced, "balance contexts per sense");
        eval->add_option("--inventory", args->inventory, "induced inventory TSV")->required();
        eval->add_option("--embeddings", args->embeddings, "word embedding file")->required();
        eval->add_option("--format", args->format, "text|binary (default text)");
        eval->add_option("--context-embeddings", args->context_embeddings,
                         "context embedding file");
        eval->add_option("--context-format", args->context_format, "text|binary (default text)");
        eval->add_option("--mode", args->mode, "pooling weighted|unweighted (default weighted)");
        eval->add_option("--strategy", args->strategy, "sim|prob (default sim)");
        eval->add_option("--filter", args->filter, "context filter p or none (default 2)");
        eval->add_option("--seed", args->seed, "seed for the random baseline");
        eval->add_option("--threads", args->threads, "worker threads");
        eval->add_option("--output", args->output, "also write the report TSV here");
        eval->callback([=, &action] { action = [=] { return cmd_eval(*args); }; });
    }

    // inspect word | inspect sense
    {
        auto* inspect = app.add_subcommand("inspect", "look at neighbors and senses");
        inspect->require_subcommand(1);

        auto* word = inspect->add_subcommand("word", "nearest neighbors of a word");
        auto wword = std::make_shared<std::string>();
        auto wembeddings = std::make_shared<std::string>();
        auto wformat = std::make_shared<std::string>("text");
        auto wgraph = std::make_shared<std::string>();
        auto winventory = std::make_shared<std::string>();
        auto wtopk = std::make_shared<std::size_t>(10);
        word->add_option("word", *wword, "query word")->required();
        word->add_option("--embeddings", *wembeddings, "rank neighbors by cosine");
        word->add_option("--format", *wformat, "text|binary (default text)");
        word->add_option("--graph", *wgraph, "or list stored graph neighbors");
        word->add_option("--inventory", *winventory, "also print the word's senses");
        word->add_option("--topk", *wtopk, "neighbors to show (default 10)");
        word->callback([=, &action] {
            action = [=] {
                return cmd_inspect_word(*wword, *wembeddings, *wformat, *wgraph, *winventory,
                                        *wtopk);
            };
        });

        auto* sense = inspect->add_subcommand("sense", "neighbors of a sense vector");
        auto skey = std::make_shared<std::string>();
        auto ssenses = std::make_shared<std::string>();
        auto sformat = std::make_shared<std::string>("text");
        auto sinventory = std::make_shared<std::string>();
        auto stopk = std::make_shared<std::size_t>(10);
        sense->add_option("sense", *skey, "sense key, e.g. table#0")->required();
        sense->add_option("--senses", *ssenses, "sense vector file")->required();
        sense->add_option("--senses-format", *sformat, "text|binary (default text)");
        sense->add_option("--inventory", *sinventory, "also print cluster members");
        sense->add_option("--topk", *stopk, "neighbors to show (default 10)");
        sense->callback([=, &action] {
            action = [=] {
                return cmd_inspect_sense(*skey, *ssenses, *sformat, *sinventory, *stopk);
            };
        });
    }

    // pipeline
    {
        auto* pipeline = app.add_subcommand(
            "pipeline", "run graph -> induce -> pool (-> eval) from a config file");
        auto config_path = std::make_shared<std::string>();
        pipeline->add_option("--config", *config_path, "flat key = value config file");
        // Every config key doubles as a flag; flags win over the file.
        static const char* keys[] = {
            "embeddings",    "embeddings-format", "context-embeddings",
            "context-embeddings-format", "graph", "inventory",
            "sense-vectors", "sense-vectors-format", "dataset", "dataset-kind",
            "output",        "topn",     "block",  "N",     "n",
            "k",             "iterations", "seed", "preset", "pooling",
            "strategy",      "filter",   "threads"};
        auto overrides = std::make_shared<std::map<std::string, std::string>>();
        for (const char* key : keys) {
            pipeline->add_option("--" + std::string(key))
                ->each([overrides, key](const std::string& v) { (*overrides)[key] = v; });
        }
        auto balanced = std::make_shared<bool>(false);
        pipeline->add_flag("--balanced", *balanced, "balance contexts per sense");
        pipeline->callback([=, &action] {
            action = [=] {
                PipelineConfig config;
                if (!config_path->empty()) config = PipelineConfig::from_file(*config_path);
                for (const auto& [key, value] : *overrides) config.apply(key, value);
                if (*balanced) config.apply("balanced", "true");
                run_pipeline(config, std::cerr);
                return 0;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action();
    } catch (const sensevec::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
