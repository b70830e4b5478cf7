#pragma once

// Synthetic fixtures shared by the unit and acceptance suites.

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sensevec/embedding.hpp"
#include "sensevec/inventory.hpp"
#include "sensevec/similarity_graph.hpp"

namespace fixtures {

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("sensevec_" + tag + "_" + std::to_string(rd()) + "_" +
                        std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline sensevec::EmbeddingMatrix random_matrix(std::size_t vocab, std::size_t dim,
                                               std::uint64_t seed,
                                               const std::string& prefix = "w") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<std::string> tokens;
    std::vector<float> data;
    tokens.reserve(vocab);
    data.reserve(vocab * dim);
    for (std::size_t i = 0; i < vocab; ++i) {
        tokens.push_back(prefix + std::to_string(i));
        for (std::size_t j = 0; j < dim; ++j) data.push_back(dist(rng));
    }
    return sensevec::EmbeddingMatrix(std::move(tokens), dim, std::move(data));
}

// Similarity graph with two clean communities around one ambiguous word:
// intra-community weights near intra_weight, cross weights near
// inter_weight, the ambiguous word "w" connected to all members.
struct PlantedGraph {
    sensevec::SimilarityGraph graph{200};
    std::string ambiguous = "w";
    std::vector<std::string> community_a;
    std::vector<std::string> community_b;
};

inline PlantedGraph planted_two_community_graph(std::size_t members_per_side = 10,
                                                double intra_weight = 0.8,
                                                double inter_weight = 0.05,
                                                std::uint64_t seed = 7) {
    PlantedGraph fixture;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> intra_jitter(-0.05, 0.05);
    std::uniform_real_distribution<double> inter_jitter(-0.02, 0.02);

    for (std::size_t i = 0; i < members_per_side; ++i) {
        fixture.community_a.push_back("furn" + std::to_string(i));
        fixture.community_b.push_back("data" + std::to_string(i));
    }

    std::vector<sensevec::WeightedNeighbor> ego_list;
    std::uniform_real_distribution<double> ego_weight(0.6, 0.75);
    for (const auto& m : fixture.community_a) ego_list.push_back({m, ego_weight(rng)});
    for (const auto& m : fixture.community_b) ego_list.push_back({m, ego_weight(rng)});
    fixture.graph.set_neighbors(fixture.ambiguous, ego_list);

    auto fill_side = [&](const std::vector<std::string>& own,
                         const std::vector<std::string>& other) {
        for (const auto& member : own) {
            std::vector<sensevec::WeightedNeighbor> list;
            for (const auto& peer : own)
                if (peer != member) list.push_back({peer, intra_weight + intra_jitter(rng)});
            for (const auto& peer : other)
                list.push_back({peer, inter_weight + inter_jitter(rng)});
            fixture.graph.set_neighbors(member, list);
        }
    };
    fill_side(fixture.community_a, fixture.community_b);
    fill_side(fixture.community_b, fixture.community_a);
    return fixture;
}

// Embedding-level fixture with two planted senses of the word "w":
// f-words cluster on one axis, d-words on an orthogonal one. Optional
// extra context tokens are sampled near sense 0's pooled vector.
struct PlantedSenses {
    sensevec::EmbeddingMatrix matrix;
    sensevec::SenseInventory inventory;
    std::vector<std::string> context_tokens;  // near sense 0
};

inline PlantedSenses planted_two_senses(std::size_t context_samples = 0,
                                        double context_noise = 0.05, std::uint64_t seed = 11) {
    constexpr std::size_t kDim = 8;
    constexpr std::size_t kPerSense = 10;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.04);

    std::vector<std::string> tokens;
    std::vector<float> data;
    auto push = [&](const std::string& token, const std::vector<double>& vec) {
        tokens.push_back(token);
        for (double v : vec) data.push_back(static_cast<float>(v));
    };

    std::vector<sensevec::WeightedNeighbor> sense0_members;
    std::vector<sensevec::WeightedNeighbor> sense1_members;
    std::vector<double> sense0_sum(kDim, 0.0);
    double sense0_mass = 0.0;
    std::uniform_real_distribution<double> member_weight(0.6, 0.95);

    for (std::size_t i = 0; i < kPerSense; ++i) {
        std::vector<double> f(kDim, 0.0);
        f[0] = 1.0;
        for (auto& v : f) v += noise(rng);
        double wf = member_weight(rng);
        push("f" + std::to_string(i), f);
        sense0_members.push_back({"f" + std::to_string(i), wf});
        for (std::size_t j = 0; j < kDim; ++j) sense0_sum[j] += wf * f[j];
        sense0_mass += wf;

        std::vector<double> d(kDim, 0.0);
        d[1] = 1.0;
        for (auto& v : d) v += noise(rng);
        push("d" + std::to_string(i), d);
        sense1_members.push_back({"d" + std::to_string(i), member_weight(rng)});
    }

    // The ambiguous word itself sits between the two clusters.
    std::vector<double> w(kDim, 0.0);
    w[0] = 0.5;
    w[1] = 0.5;
    push("w", w);

    std::vector<double> sense0_mean(kDim);
    for (std::size_t j = 0; j < kDim; ++j) sense0_mean[j] = sense0_sum[j] / sense0_mass;
    std::normal_distribution<double> ctx_noise(0.0, context_noise);
    std::vector<std::string> context_tokens;
    for (std::size_t t = 0; t < context_samples; ++t) {
        std::vector<double> c = sense0_mean;
        for (auto& v : c) v += ctx_noise(rng);
        std::string token = "ctx" + std::to_string(t);
        push(token, c);
        context_tokens.push_back(std::move(token));
    }

    sensevec::SenseInventory inventory;
    sensevec::SenseCluster sense0{"w", 0, sense0_members};
    sensevec::SenseCluster sense1{"w", 1, sense1_members};
    inventory.set_entry("w", {std::move(sense0), std::move(sense1)});

    return PlantedSenses{
        sensevec::EmbeddingMatrix(std::move(tokens), kDim, std::move(data)),
        std::move(inventory), std::move(context_tokens)};
}

}  // namespace fixtures
