#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "polis/backend/parse.hpp"

namespace polis::backend {

/// Append-only prediction cache (cache.jsonl). Keys are
/// sha256(model_id, template_version, body), so a key changes exactly when
/// one of those three changes. Concurrent inserts are serialized;
/// identical keys carry identical values by construction, so
/// last-write-wins is harmless. Transport failures are never cached.
class PredictionCache {
public:
    PredictionCache() = default; // in-memory only
    explicit PredictionCache(std::filesystem::path file);

    static std::string make_key(const std::string& model_id,
                                const std::string& template_version, std::string_view body);

    std::optional<ParseOutcome> lookup(const std::string& key) const;

    void insert(const std::string& key, const std::string& model_id,
                const std::string& template_version, const ParseOutcome& outcome);

    std::size_t size() const;

private:
    struct Entry {
        std::string model_id;
        std::string template_version;
        std::optional<corpus::Party> party;
        std::optional<int> confidence;
        std::string raw;
    };

    ParseOutcome to_outcome(const Entry& e) const;

    mutable std::mutex mu_;
    std::unordered_map<std::string, Entry> entries_;
    std::filesystem::path file_;
};

} // namespace polis::backend
