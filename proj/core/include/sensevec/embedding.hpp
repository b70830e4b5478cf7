#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sensevec/util.hpp"

namespace sensevec {

enum class MatrixKind { word, context };
enum class VectorFormat { text, binary };

VectorFormat parse_vector_format(std::string_view name);

// Dense vocabulary-indexed matrix in the word2vec interchange formats.
// Immutable after construction; concurrent reads are safe.
//
// Text format:   header "<vocab> <dim>\n", then "<token> <f1> ... <fdim>\n".
// Binary format: same ASCII header, then per entry the token bytes, one
//                space, dim little-endian IEEE-754 float32 (a trailing
//                newline after the floats is tolerated on read).
class EmbeddingMatrix {
public:
    EmbeddingMatrix(std::vector<std::string> vocab, std::size_t dim,
                    std::vector<float> data, MatrixKind kind = MatrixKind::word);

    static EmbeddingMatrix load(const std::filesystem::path& path, VectorFormat format,
                                MatrixKind kind = MatrixKind::word);
    void save(const std::filesystem::path& path, VectorFormat format) const;

    std::size_t size() const noexcept { return vocab_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    MatrixKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& vocab() const noexcept { return vocab_; }
    const std::string& token(std::size_t row) const { return vocab_.at(row); }

    std::span<const float> row(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    std::optional<std::size_t> row_of(std::string_view token) const {
        auto it = index_.find(token);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::span<const float> vector_of(std::string_view token) const;  // throws if absent
    bool contains(std::string_view token) const { return index_.contains(token); }

    // Copy with unit-L2 rows, for cosine work.
    EmbeddingMatrix normalized() const;

private:
    std::vector<std::string> vocab_;
    std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
    std::size_t dim_ = 0;
    std::vector<float> data_;
    MatrixKind kind_ = MatrixKind::word;
};

// All accumulation is done in double regardless of element type.
double dot(std::span<const float> a, std::span<const float> b);
double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const float> a);
double l2_norm(std::span<const double> a);

// a.b / (|a||b|). Throws on dimension mismatch or zero-norm input.
double cosine(std::span<const float> a, std::span<const float> b);
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace sensevec
