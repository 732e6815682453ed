#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace polis::backend {

struct EmbeddingVector {
    std::vector<double> values;
    double norm = 0.0; // Euclidean norm of values
};

EmbeddingVector make_embedding(std::vector<double> values);

/// Cosine similarity; raises ValidationError on a zero vector or a
/// dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Coordinate-wise arithmetic mean.
EmbeddingVector mean_embedding(const std::vector<EmbeddingVector>& vectors);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dim() const = 0;
    virtual EmbeddingVector embed(std::string_view text) = 0;
    virtual std::string id() const = 0;
};

/// Deterministic test provider: every word token hashes to a fixed
/// Gaussian direction and a text embeds as the normalized sum of its token
/// vectors. Texts sharing vocabulary land near each other, which is what
/// the category-proximity analyses need from an encoder.
class HashedBowEmbedder : public EmbeddingProvider {
public:
    explicit HashedBowEmbedder(std::size_t dim = 64, std::uint64_t seed = 0);

    std::size_t dim() const override { return dim_; }
    EmbeddingVector embed(std::string_view text) override;
    std::string id() const override;

private:
    const std::vector<double>& token_vector(const std::string& token);

    std::size_t dim_;
    std::uint64_t seed_;
    std::mutex mu_;
    std::unordered_map<std::string, std::vector<double>> token_cache_;
};

/// Serves vectors from an embeddings.jsonl file keyed by sha256(content).
/// A query whose hash is absent raises an error naming the hash.
class PrecomputedEmbedder : public EmbeddingProvider {
public:
    explicit PrecomputedEmbedder(const std::filesystem::path& file);

    std::size_t dim() const override { return dim_; }
    EmbeddingVector embed(std::string_view text) override;
    std::string id() const override { return "precomputed"; }

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::vector<double>> by_hash_;
};

/// Content-hash memo in front of another provider, optionally persisted as
/// embeddings.jsonl lines.
class CachingEmbedder : public EmbeddingProvider {
public:
    CachingEmbedder(EmbeddingProvider& inner, std::filesystem::path cache_file = {});

    std::size_t dim() const override { return inner_.dim(); }
    EmbeddingVector embed(std::string_view text) override;
    std::string id() const override { return inner_.id() + "+cache"; }

    std::size_t cache_hits() const { return hits_; }

private:
    EmbeddingProvider& inner_;
    std::filesystem::path file_;
    std::mutex mu_;
    std::unordered_map<std::string, std::vector<double>> memo_;
    std::size_t hits_ = 0;
};

/// One vector per input, constant dimension; repeated strings are embedded
/// once.
std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts,
                                         EmbeddingProvider& provider);

} // namespace polis::backend
