#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "polis/backend/backend.hpp"
#include "polis/backend/cache.hpp"
#include "polis/backend/parse.hpp"
#include "polis/backend/template.hpp"
#include "polis/util/backoff.hpp"

namespace polis::backend {

struct BackendConfig {
    std::string model_id = "mock-inference";
    std::string endpoint;
    std::string api_key_env;
    int max_in_flight = 4;
    int retry_cap = 5;
    std::filesystem::path cache_path;
    double temperature = 0.0; // recorded with the run; 0 = provider's most deterministic
    util::BackoffPolicy backoff;
    util::SleepFn sleep = util::real_sleep();

    void validate() const;
};

struct InferStats {
    std::size_t requests = 0;
    std::size_t cache_hits = 0;
    std::size_t retries = 0;
    std::size_t malformed = 0;
};

using InferResult = std::pair<std::string, ParseOutcome>; // (text_id, outcome)

/// One outcome per input text, in input order. Cached entries are never
/// re-requested; at most max_in_flight requests run concurrently; transient
/// failures are retried with exponential backoff up to retry_cap and then
/// recorded as MalformedResponse(transport). A permanent failure (bad
/// credentials) aborts the whole batch with TransportError.
std::vector<InferResult> infer_batch(const std::vector<corpus::TextUnit>& texts,
                                     const PromptTemplate& tpl, const BackendConfig& config,
                                     InferenceBackend& backend, PredictionCache& cache,
                                     InferStats* stats = nullptr);

/// Fraction of outcomes that are well-formed Predictions. Errors on empty
/// input.
double answer_ratio(const std::vector<InferResult>& results);

/// Maps a community description onto one of the 23 categories with the
/// same closed-set parsing discipline as parse_prediction. Unparseable
/// after retries falls back to Miscellaneous with a warning record.
corpus::Category classify_subreddit(const std::string& description, InferenceBackend& backend,
                                    const BackendConfig& config,
                                    std::vector<std::string>* warnings = nullptr);

} // namespace polis::backend
