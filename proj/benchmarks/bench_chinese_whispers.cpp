#include <benchmark/benchmark.h>

#include <random>

#include "sensevec/chinese_whispers.hpp"

namespace {

// Dense random graph with planted communities, shaped like a real
// ego-network of a polysemous word.
sensevec::EgoNetwork community_network(std::size_t nodes, std::size_t communities) {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> intra(0.6, 0.9);
    std::uniform_real_distribution<double> inter(0.0, 0.1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nodes; ++i) names.push_back("n" + std::to_string(i));
    sensevec::EgoNetwork net("ego", std::move(names));
    for (std::uint32_t a = 0; a < nodes; ++a)
        for (std::uint32_t b = a + 1; b < nodes; ++b) {
            bool same = (a % communities) == (b % communities);
            if (same && coin(rng) < 0.5)
                net.add_edge(a, b, intra(rng));
            else if (!same && coin(rng) < 0.02)
                net.add_edge(a, b, inter(rng));
        }
    return net;
}

void ChineseWhispersNodes(benchmark::State& state) {
    auto net = community_network(static_cast<std::size_t>(state.range(0)), 4);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto result = sensevec::chinese_whispers(net, 20, seed++);
        benchmark::DoNotOptimize(result);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ChineseWhispersNodes)->Range(50, 800)->Complexity();

}  // namespace
