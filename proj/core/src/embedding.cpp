#include "sensevec/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace sensevec {

namespace {

void check_token(const std::string& token) {
    if (token.empty())
        throw ParseError("empty token");
    for (char c : token) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw ParseError("token contains whitespace: '" + token + "'");
    }
}

std::uint32_t to_little_endian(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) |
               ((v >> 8) & 0xff00u) | (v >> 24);
    }
}

float float_from_le_bytes(const char* bytes) {
    std::uint32_t bits;
    std::memcpy(&bits, bytes, 4);
    bits = to_little_endian(bits);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

void float_to_le_bytes(float f, char* bytes) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    bits = to_little_endian(bits);
    std::memcpy(bytes, &bits, 4);
}

std::pair<std::size_t, std::size_t> read_header(std::istream& in, const std::filesystem::path& path) {
    std::string header;
    if (!std::getline(in, header))
        throw ParseError(path.string() + ": missing header line");
    auto fields = split(trim(header), ' ');
    if (fields.size() != 2)
        throw ParseError(path.string() + ": malformed header '" + header + "'");
    auto vocab = parse_number<std::size_t>(fields[0], "vocab size");
    auto dim = parse_number<std::size_t>(fields[1], "dimension");
    if (vocab < 1 || dim < 1)
        throw ParseError(path.string() + ": header must declare vocab >= 1 and dim >= 1");
    return {vocab, dim};
}

}  // namespace

VectorFormat parse_vector_format(std::string_view name) {
    if (name == "text") return VectorFormat::text;
    if (name == "binary" || name == "bin") return VectorFormat::binary;
    throw ConfigError("unknown vector format '" + std::string(name) + "' (expected text|binary)");
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> vocab, std::size_t dim,
                                 std::vector<float> data, MatrixKind kind)
    : vocab_(std::move(vocab)), dim_(dim), data_(std::move(data)), kind_(kind) {
    if (vocab_.empty()) throw ParseError("embedding matrix needs at least one token");
    if (dim_ < 1) throw ParseError("embedding dimensionality must be >= 1");
    if (data_.size() != vocab_.size() * dim_)
        throw ParseError("embedding data size does not match vocab * dim");
    index_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        check_token(vocab_[i]);
        auto [it, inserted] = index_.emplace(vocab_[i], i);
        if (!inserted)
            throw ParseError("duplicate token '" + vocab_[i] + "'");
    }
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        double norm_sq = 0.0;
        for (float v : row(i)) {
            if (!std::isfinite(v))
                throw ParseError("non-finite component in vector of '" + vocab_[i] + "'");
            norm_sq += static_cast<double>(v) * v;
        }
        if (norm_sq == 0.0)
            throw ParseError("zero-norm vector for token '" + vocab_[i] + "'");
    }
}

std::span<const float> EmbeddingMatrix::vector_of(std::string_view token) const {
    auto r = row_of(token);
    if (!r) throw std::out_of_range("token not in vocabulary: '" + std::string(token) + "'");
    return row(*r);
}

EmbeddingMatrix EmbeddingMatrix::normalized() const {
    std::vector<float> data(data_.size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto r = row(i);
        double norm = l2_norm(r);
        for (std::size_t j = 0; j < dim_; ++j)
            data[i * dim_ + j] = static_cast<float>(r[j] / norm);
    }
    return EmbeddingMatrix(vocab_, dim_, std::move(data), kind_);
}

EmbeddingMatrix EmbeddingMatrix::load(const std::filesystem::path& path, VectorFormat format,
                                      MatrixKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open embeddings file: " + path.string());
    auto [vocab_size, dim] = read_header(in, path);

    std::vector<std::string> vocab;
    vocab.reserve(vocab_size);
    std::vector<float> data;
    data.reserve(vocab_size * dim);

    if (format == VectorFormat::text) {
        std::string line;
        for (std::size_t i = 0; i < vocab_size; ++i) {
            if (!std::getline(in, line))
                throw ParseError(path.string() + ": expected " + std::to_string(vocab_size) +
                                 " rows, got " + std::to_string(i));
            auto fields = split(trim(line), ' ');
            if (fields.size() != dim + 1)
                throw ParseError(path.string() + ": row " + std::to_string(i + 1) +
                                 " has " + std::to_string(fields.size() ? fields.size() - 1 : 0) +
                                 " components, expected " + std::to_string(dim));
            vocab.emplace_back(fields[0]);
            for (std::size_t j = 1; j <= dim; ++j)
                data.push_back(parse_number<float>(fields[j], "vector component"));
        }
    } else {
        std::vector<char> buf(dim * 4);
        for (std::size_t i = 0; i < vocab_size; ++i) {
            std::string token;
            int c;
            // Skip separators left over from the previous entry.
            while ((c = in.get()) != EOF && (c == '\n' || c == '\r' || c == ' ')) {
            }
            while (c != EOF && c != ' ') {
                token.push_back(static_cast<char>(c));
                c = in.get();
            }
            if (c == EOF)
                throw ParseError(path.string() + ": truncated binary entry " + std::to_string(i + 1));
            if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size())))
                throw ParseError(path.string() + ": truncated vector for token '" + token + "'");
            vocab.push_back(std::move(token));
            for (std::size_t j = 0; j < dim; ++j)
                data.push_back(float_from_le_bytes(buf.data() + j * 4));
        }
    }
    return EmbeddingMatrix(std::move(vocab), dim, std::move(data), kind);
}

void EmbeddingMatrix::save(const std::filesystem::path& path, VectorFormat format) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + path.string());
    out << size() << ' ' << dim_ << '\n';
    if (format == VectorFormat::text) {
        std::string line;
        for (std::size_t i = 0; i < size(); ++i) {
            line = vocab_[i];
            for (float v : row(i)) {
                line += ' ';
                line += format_number(v);
            }
            line += '\n';
            out << line;
        }
    } else {
        std::vector<char> buf(dim_ * 4);
        for (std::size_t i = 0; i < size(); ++i) {
            out << vocab_[i] << ' ';
            auto r = row(i);
            for (std::size_t j = 0; j < dim_; ++j)
                float_to_le_bytes(r[j], buf.data() + j * 4);
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            out << '\n';
        }
    }
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

namespace {
template <typename T>
double dot_impl(std::span<const T> a, std::span<const T> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return acc;
}

template <typename T>
double cosine_impl(std::span<const T> a, std::span<const T> b) {
    double na = l2_norm(a);
    double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("cosine: zero-norm input");
    double c = dot(a, b) / (na * nb);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}
}  // namespace

double dot(std::span<const float> a, std::span<const float> b) { return dot_impl(a, b); }
double dot(std::span<const double> a, std::span<const double> b) { return dot_impl(a, b); }
double l2_norm(std::span<const float> a) { return std::sqrt(dot_impl(a, a)); }
double l2_norm(std::span<const double> a) { return std::sqrt(dot_impl(a, a)); }
double cosine(std::span<const float> a, std::span<const float> b) { return cosine_impl(a, b); }
double cosine(std::span<const double> a, std::span<const double> b) { return cosine_impl(a, b); }

}  // namespace sensevec
