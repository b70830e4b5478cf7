#include <doctest.h>

#include <fstream>
#include <random>

#include "sensevec/embedding.hpp"
#include "support/fixtures.hpp"

using namespace sensevec;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("text loading parses a minimal well-formed file") {
    fixtures::TempDir dir("emb");
    write_file(dir.file("m.txt"), "2 3\na 1 0 0\nb 0 1 0\n");
    auto m = EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text);
    CHECK(m.size() == 2);
    CHECK(m.dim() == 3);
    CHECK(m.vocab() == std::vector<std::string>{"a", "b"});
    CHECK(m.row(0)[0] == 1.0f);
    CHECK(m.row(1)[1] == 1.0f);
    CHECK(m.row_of("a") == 0);
    CHECK(m.row_of("b") == 1);
    CHECK(!m.row_of("c"));
}

TEST_CASE("duplicate tokens are rejected") {
    fixtures::TempDir dir("emb");
    write_file(dir.file("m.txt"), "2 3\na 1 0 0\na 0 1 0\n");
    CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text), ParseError);
}

TEST_CASE("malformed inputs are rejected") {
    fixtures::TempDir dir("emb");
    SUBCASE("bad header") {
        write_file(dir.file("m.txt"), "two 3\na 1 0 0\n");
        CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text), ParseError);
    }
    SUBCASE("row length mismatch") {
        write_file(dir.file("m.txt"), "2 3\na 1 0 0\nb 0 1\n");
        CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text), ParseError);
    }
    SUBCASE("non-finite component") {
        write_file(dir.file("m.txt"), "2 3\na 1 0 0\nb 0 nan 0\n");
        CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text), ParseError);
    }
    SUBCASE("zero-norm vector") {
        write_file(dir.file("m.txt"), "2 3\na 1 0 0\nb 0 0 0\n");
        CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text), ParseError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("nope.txt"), VectorFormat::text),
                        ConfigError);
    }
    SUBCASE("truncated binary") {
        write_file(dir.file("m.bin"), std::string("2 3\na \x01\x02\x03\x04", 10));
        CHECK_THROWS_AS(EmbeddingMatrix::load(dir.file("m.bin"), VectorFormat::binary),
                        ParseError);
    }
}

TEST_CASE("binary save then load round-trips the text example bit-exactly") {
    fixtures::TempDir dir("emb");
    write_file(dir.file("m.txt"), "2 3\na 1 0 0\nb 0 1 0\n");
    auto m = EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text);
    m.save(dir.file("m.bin"), VectorFormat::binary);
    auto back = EmbeddingMatrix::load(dir.file("m.bin"), VectorFormat::binary);
    REQUIRE(back.size() == m.size());
    REQUIRE(back.dim() == m.dim());
    CHECK(back.vocab() == m.vocab());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            CHECK(back.row(i)[j] == m.row(i)[j]);
}

TEST_CASE("save then load is the identity on random matrices, both formats") {
    fixtures::TempDir dir("emb");
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto m = fixtures::random_matrix(40, 17, seed);
        for (auto format : {VectorFormat::text, VectorFormat::binary}) {
            auto path = dir.file("m" + std::to_string(seed) +
                                 (format == VectorFormat::text ? ".txt" : ".bin"));
            m.save(path, format);
            auto back = EmbeddingMatrix::load(path, format);
            REQUIRE(back.vocab() == m.vocab());
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.dim(); ++j)
                    CHECK(back.row(i)[j] == m.row(i)[j]);
        }
    }
}

TEST_CASE("single-word matrix writes header '1 <dim>'") {
    fixtures::TempDir dir("emb");
    EmbeddingMatrix m({"only"}, 4, {1.0f, 2.0f, 3.0f, 4.0f});
    m.save(dir.file("m.txt"), VectorFormat::text);
    std::ifstream in(dir.file("m.txt"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "1 4");
}

TEST_CASE("token lookup preserves file row order") {
    fixtures::TempDir dir("emb");
    write_file(dir.file("m.txt"), "3 2\nzeta 1 0\nalpha 0 1\nmid 1 1\n");
    auto m = EmbeddingMatrix::load(dir.file("m.txt"), VectorFormat::text);
    CHECK(m.row_of("zeta") == 0);
    CHECK(m.row_of("alpha") == 1);
    CHECK(m.row_of("mid") == 2);
}

TEST_CASE("binary reader tolerates a missing trailing newline") {
    fixtures::TempDir dir("emb");
    auto m = fixtures::random_matrix(3, 4, 5);
    m.save(dir.file("m.bin"), VectorFormat::binary);
    // Strip the final newline byte.
    auto size = std::filesystem::file_size(dir.file("m.bin"));
    std::filesystem::resize_file(dir.file("m.bin"), size - 1);
    auto back = EmbeddingMatrix::load(dir.file("m.bin"), VectorFormat::binary);
    CHECK(back.vocab() == m.vocab());
}

TEST_CASE("cosine identities") {
    std::vector<float> v{0.3f, -1.2f, 4.0f};
    CHECK(cosine(std::span<const float>(v), std::span<const float>(v)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    std::vector<float> x{1.0f, 0.0f};
    std::vector<float> y{0.0f, 1.0f};
    CHECK(cosine(std::span<const float>(x), std::span<const float>(y)) == 0.0);
}

TEST_CASE("cosine matches the high-precision oracle") {
    // 32 / (sqrt(14) * sqrt(77)) evaluated with 50-digit arithmetic.
    std::vector<double> a{1.0, 2.0, 3.0};
    std::vector<double> b{4.0, 5.0, 6.0};
    CHECK(cosine(std::span<const double>(a), std::span<const double>(b)) ==
          doctest::Approx(0.9746318461970762).epsilon(1e-12));
}

TEST_CASE("cosine rejects zero vectors and mismatched dimensions") {
    std::vector<double> a{1.0, 2.0};
    std::vector<double> zero{0.0, 0.0};
    std::vector<double> longer{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(cosine(std::span<const double>(a), std::span<const double>(zero)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cosine(std::span<const double>(a), std::span<const double>(longer)),
                    std::invalid_argument);
}

TEST_CASE("cosine is symmetric and scale-invariant on random vectors") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> dist(0.0, 2.0);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(6), b(6);
        for (auto& v : a) v = dist(rng);
        for (auto& v : b) v = dist(rng);
        double c = cosine(std::span<const double>(a), std::span<const double>(b));
        CHECK(cosine(std::span<const double>(b), std::span<const double>(a)) ==
              doctest::Approx(c).epsilon(1e-12));
        double lambda = scale(rng);
        std::vector<double> scaled(a);
        for (auto& v : scaled) v *= lambda;
        CHECK(cosine(std::span<const double>(scaled), std::span<const double>(b)) ==
              doctest::Approx(c).epsilon(1e-9));
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("normalized returns unit rows") {
    auto m = fixtures::random_matrix(20, 9, 21);
    auto unit = m.normalized();
    for (std::size_t i = 0; i < unit.size(); ++i)
        CHECK(l2_norm(unit.row(i)) == doctest::Approx(1.0).epsilon(1e-6));
}
