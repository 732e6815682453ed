#include "polis/backend/embed.hpp"

#include <cmath>
#include <random>

#include "polis/util/errors.hpp"
#include "polis/util/hash.hpp"
#include "polis/util/jsonl.hpp"
#include "polis/util/text.hpp"

namespace polis::backend {

EmbeddingVector make_embedding(std::vector<double> values) {
    EmbeddingVector v;
    v.values = std::move(values);
    double sq = 0.0;
    for (double x : v.values) {
        sq += x * x;
    }
    v.norm = std::sqrt(sq);
    return v;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.values.size() != b.values.size()) {
        throw ValidationError("cosine: dimension mismatch");
    }
    if (a.norm == 0.0 || b.norm == 0.0) {
        throw ValidationError("cosine: zero vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
    }
    return dot / (a.norm * b.norm);
}

EmbeddingVector mean_embedding(const std::vector<EmbeddingVector>& vectors) {
    if (vectors.empty()) {
        throw ValidationError("mean_embedding: empty input");
    }
    std::vector<double> sum(vectors.front().values.size(), 0.0);
    for (const auto& v : vectors) {
        if (v.values.size() != sum.size()) {
            throw ValidationError("mean_embedding: dimension mismatch");
        }
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += v.values[i];
        }
    }
    for (auto& x : sum) {
        x /= static_cast<double>(vectors.size());
    }
    return make_embedding(std::move(sum));
}

HashedBowEmbedder::HashedBowEmbedder(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {}

const std::vector<double>& HashedBowEmbedder::token_vector(const std::string& token) {
    auto it = token_cache_.find(token);
    if (it != token_cache_.end()) {
        return it->second;
    }
    std::mt19937_64 rng(util::derive_seed(seed_, "tok/" + token));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(dim_);
    for (auto& x : v) {
        x = gauss(rng);
    }
    return token_cache_.emplace(token, std::move(v)).first->second;
}

EmbeddingVector HashedBowEmbedder::embed(std::string_view text) {
    std::vector<double> sum(dim_, 0.0);
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& token : util::word_tokens(text)) {
        const auto& tv = token_vector(token);
        for (std::size_t i = 0; i < dim_; ++i) {
            sum[i] += tv[i];
        }
    }
    double sq = 0.0;
    for (double x : sum) {
        sq += x * x;
    }
    if (sq > 0.0) {
        double inv = 1.0 / std::sqrt(sq);
        for (auto& x : sum) {
            x *= inv;
        }
    }
    return make_embedding(std::move(sum));
}

std::string HashedBowEmbedder::id() const {
    return "hashed-bow-d" + std::to_string(dim_) + "-s" + std::to_string(seed_);
}

PrecomputedEmbedder::PrecomputedEmbedder(const std::filesystem::path& file) {
    util::read_jsonl(file, [&](std::size_t line_no, const util::json& line) {
        if (!line.contains("hash") || !line.contains("values")) {
            throw ValidationError(file.string() + ":" + std::to_string(line_no) +
                                  ": embedding line needs \"hash\" and \"values\"");
        }
        auto values = line["values"].get<std::vector<double>>();
        if (dim_ == 0) {
            dim_ = values.size();
        } else if (values.size() != dim_) {
            throw ValidationError(file.string() + ":" + std::to_string(line_no) +
                                  ": inconsistent embedding dimension");
        }
        by_hash_[line["hash"].get<std::string>()] = std::move(values);
    });
}

EmbeddingVector PrecomputedEmbedder::embed(std::string_view text) {
    std::string hash = util::sha256_hex(text);
    auto it = by_hash_.find(hash);
    if (it == by_hash_.end()) {
        throw ValidationError("no precomputed embedding for content hash " + hash);
    }
    return make_embedding(it->second);
}

CachingEmbedder::CachingEmbedder(EmbeddingProvider& inner, std::filesystem::path cache_file)
    : inner_(inner), file_(std::move(cache_file)) {
    if (!file_.empty() && std::filesystem::exists(file_)) {
        util::read_jsonl(file_, [&](std::size_t, const util::json& line) {
            if (line.contains("hash") && line.contains("values")) {
                memo_[line["hash"].get<std::string>()] =
                    line["values"].get<std::vector<double>>();
            }
        });
    }
}

EmbeddingVector CachingEmbedder::embed(std::string_view text) {
    std::string hash = util::sha256_hex(text);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(hash);
        if (it != memo_.end()) {
            ++hits_;
            return make_embedding(it->second);
        }
    }
    EmbeddingVector v = inner_.embed(text);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(hash, v.values);
    if (inserted && !file_.empty()) {
        util::append_jsonl(file_, util::json{{"hash", hash},
                                             {"dim", v.values.size()},
                                             {"values", v.values}});
    }
    return v;
}

std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts,
                                         EmbeddingProvider& provider) {
    std::unordered_map<std::string, std::size_t> first_seen;
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        std::string hash = util::sha256_hex(text);
        auto it = first_seen.find(hash);
        if (it != first_seen.end()) {
            out.push_back(out[it->second]);
            continue;
        }
        EmbeddingVector v = provider.embed(text);
        if (v.values.size() != provider.dim()) {
            throw ValidationError("provider returned wrong embedding dimension");
        }
        first_seen.emplace(std::move(hash), out.size());
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace polis::backend
