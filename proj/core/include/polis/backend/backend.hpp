#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polis/corpus/types.hpp"

namespace polis::backend {

struct CompletionResult {
    enum class Status { ok, transient, permanent };
    Status status = Status::ok;
    std::string text;
    std::string error;

    static CompletionResult success(std::string body) {
        return {Status::ok, std::move(body), ""};
    }
    static CompletionResult transient_failure(std::string why) {
        return {Status::transient, "", std::move(why)};
    }
    static CompletionResult permanent_failure(std::string why) {
        return {Status::permanent, "", std::move(why)};
    }
};

/// One chat-style completion per call. Implementations must be safe to call
/// from multiple threads.
class InferenceBackend {
public:
    virtual ~InferenceBackend() = default;
    virtual CompletionResult complete(const std::string& prompt) = 0;
    virtual std::string model_id() const = 0;
};

/// Deterministic stand-in for the remote model. The reply is a function of
/// planted marker tokens in the prompt: the majority side wins and the net
/// marker count sets the confidence, min(5, 1 + |rep - dem|). With no
/// markers (or an exact tie) the party falls to the parity of a prompt
/// hash at confidence 1. Pure: identical prompt, identical reply.
class MockInferenceBackend : public InferenceBackend {
public:
    MockInferenceBackend(std::vector<std::string> rep_markers,
                         std::vector<std::string> dem_markers,
                         std::string model_id = "mock-inference");

    CompletionResult complete(const std::string& prompt) override;
    std::string model_id() const override { return model_id_; }

private:
    std::unordered_set<std::string> rep_;
    std::unordered_set<std::string> dem_;
    std::string model_id_;
};

/// Keyword-table categorizer used in place of the remote model for
/// subreddit classification. Only tokens after the "description" sentinel
/// of the category prompt are scanned, so instruction boilerplate (which
/// necessarily names all categories) cannot trigger a match.
class MockCategorizerBackend : public InferenceBackend {
public:
    explicit MockCategorizerBackend(
        std::unordered_map<std::string, corpus::Category> keyword_table = default_keywords(),
        std::string model_id = "mock-categorizer");

    CompletionResult complete(const std::string& prompt) override;
    std::string model_id() const override { return model_id_; }

    static std::unordered_map<std::string, corpus::Category> default_keywords();

private:
    std::unordered_map<std::string, corpus::Category> keywords_;
    std::string model_id_;
};

/// A backend that fails every call; used to enforce NO_NETWORK runs where
/// every result must come out of the prediction cache.
class UnreachableBackend : public InferenceBackend {
public:
    explicit UnreachableBackend(std::string model_id) : model_id_(std::move(model_id)) {}
    CompletionResult complete(const std::string&) override {
        return CompletionResult::permanent_failure("network disabled (NO_NETWORK=1)");
    }
    std::string model_id() const override { return model_id_; }

private:
    std::string model_id_;
};

/// OpenAI-style chat-completions client. The API key is read from the
/// named environment variable at construction and never persisted.
std::unique_ptr<InferenceBackend> make_http_backend(const std::string& endpoint,
                                                    const std::string& model_id,
                                                    const std::string& api_key_env,
                                                    double temperature);

} // namespace polis::backend
