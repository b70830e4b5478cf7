#include <benchmark/benchmark.h>

#include <random>

#include "sensevec/wsd.hpp"

namespace {

struct World {
    sensevec::SenseVectorStore store;
    sensevec::EmbeddingMatrix words;
};

World make_world(std::size_t dim) {
    std::mt19937_64 rng(99);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<std::string> sense_tokens;
    std::vector<float> sense_data;
    for (int w = 0; w < 100; ++w)
        for (int s = 0; s < 3; ++s) {
            sense_tokens.push_back("t" + std::to_string(w) + "#" + std::to_string(s));
            for (std::size_t j = 0; j < dim; ++j) sense_data.push_back(dist(rng));
        }
    std::vector<std::string> word_tokens;
    std::vector<float> word_data;
    for (int w = 0; w < 5000; ++w) {
        word_tokens.push_back("c" + std::to_string(w));
        for (std::size_t j = 0; j < dim; ++j) word_data.push_back(dist(rng));
    }
    sensevec::EmbeddingMatrix senses(std::move(sense_tokens), dim, std::move(sense_data));
    return {sensevec::SenseVectorStore::from_matrix(senses, "bench"),
            sensevec::EmbeddingMatrix(std::move(word_tokens), dim, std::move(word_data))};
}

void Disambiguate(benchmark::State& state) {
    auto world = make_world(100);
    std::mt19937_64 rng(3);
    for (auto _ : state) {
        sensevec::DisambiguationRequest request;
        request.target = "t" + std::to_string(rng() % 100);
        for (int i = 0; i < 8; ++i)
            request.context.push_back("c" + std::to_string(rng() % 5000));
        request.filter_p = state.range(0) > 0
                               ? std::optional<std::size_t>(static_cast<std::size_t>(state.range(0)))
                               : std::nullopt;
        auto result = sensevec::disambiguate(request, world.store, world.words);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(Disambiguate)->Arg(0)->Arg(2)->Arg(5);

}  // namespace
