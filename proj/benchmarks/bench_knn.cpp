#include <benchmark/benchmark.h>

#include <random>

#include "sensevec/knn.hpp"

namespace {

sensevec::EmbeddingMatrix random_matrix(std::size_t vocab, std::size_t dim) {
    std::mt19937_64 rng(12345);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<std::string> tokens;
    std::vector<float> data;
    for (std::size_t i = 0; i < vocab; ++i) {
        tokens.push_back("w" + std::to_string(i));
        for (std::size_t j = 0; j < dim; ++j) data.push_back(dist(rng));
    }
    return {std::move(tokens), dim, std::move(data)};
}

void KnnBlockSize(benchmark::State& state) {
    auto matrix = random_matrix(2000, 100);
    for (auto _ : state) {
        auto graph = sensevec::build_knn_graph(
            matrix, {200, static_cast<std::size_t>(state.range(0)), 1});
        benchmark::DoNotOptimize(graph);
    }
}
BENCHMARK(KnnBlockSize)->Arg(1)->Arg(64)->Arg(1000)->Unit(benchmark::kMillisecond);

void KnnThreads(benchmark::State& state) {
    auto matrix = random_matrix(2000, 100);
    for (auto _ : state) {
        auto graph = sensevec::build_knn_graph(
            matrix, {200, 64, static_cast<unsigned>(state.range(0))});
        benchmark::DoNotOptimize(graph);
    }
}
BENCHMARK(KnnThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void KnnVocabulary(benchmark::State& state) {
    auto matrix = random_matrix(static_cast<std::size_t>(state.range(0)), 100);
    for (auto _ : state) {
        auto graph = sensevec::build_knn_graph(matrix, {200, 1000, 0});
        benchmark::DoNotOptimize(graph);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(KnnVocabulary)->Range(500, 4000)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace
