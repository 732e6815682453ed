#include "polis/backend/infer.hpp"

#include <atomic>
#include <random>
#include <thread>

#include <json.hpp>

#include "polis/util/errors.hpp"
#include "polis/util/hash.hpp"

namespace polis::backend {

void BackendConfig::validate() const {
    if (max_in_flight < 1) {
        throw ValidationError("backend max_in_flight must be >= 1");
    }
    if (retry_cap < 0) {
        throw ValidationError("backend retry_cap must be >= 0");
    }
    if (model_id.empty()) {
        throw ValidationError("backend model_id must be non-empty");
    }
}

std::vector<InferResult> infer_batch(const std::vector<corpus::TextUnit>& texts,
                                     const PromptTemplate& tpl, const BackendConfig& config,
                                     InferenceBackend& backend, PredictionCache& cache,
                                     InferStats* stats) {
    config.validate();
    tpl.validate();

    std::vector<InferResult> results(texts.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::atomic<std::size_t> requests{0}, cache_hits{0}, retries{0}, malformed{0};
    std::mutex error_mu;
    std::string permanent_error;

    auto worker = [&](unsigned worker_id) {
        std::mt19937_64 rng(util::derive_seed(0, "infer-jitter/" + std::to_string(worker_id)));
        while (!abort.load()) {
            std::size_t i = next.fetch_add(1);
            if (i >= texts.size()) {
                break;
            }
            const auto& unit = texts[i];
            std::string key = PredictionCache::make_key(config.model_id, tpl.version, unit.body);
            if (auto hit = cache.lookup(key)) {
                if (!is_prediction(*hit)) {
                    ++malformed;
                }
                results[i] = {unit.text_id, std::move(*hit)};
                ++cache_hits;
                continue;
            }
            std::string prompt = render_prompt(tpl, unit.body);
            int attempt = 0;
            while (true) {
                CompletionResult r = backend.complete(prompt);
                ++requests;
                if (r.status == CompletionResult::Status::ok) {
                    ParseOutcome outcome = parse_prediction(r.text);
                    if (auto* p = std::get_if<Prediction>(&outcome)) {
                        p->model_id = config.model_id;
                        p->template_version = tpl.version;
                    } else {
                        ++malformed;
                    }
                    cache.insert(key, config.model_id, tpl.version, outcome);
                    results[i] = {unit.text_id, std::move(outcome)};
                    break;
                }
                if (r.status == CompletionResult::Status::permanent) {
                    {
                        std::lock_guard<std::mutex> lock(error_mu);
                        if (permanent_error.empty()) {
                            permanent_error = r.error;
                        }
                    }
                    abort.store(true);
                    break;
                }
                if (attempt >= config.retry_cap) {
                    MalformedResponse mr;
                    mr.reason = MalformedResponse::Reason::transport;
                    mr.detail = r.error;
                    ++malformed;
                    results[i] = {unit.text_id, std::move(mr)}; // not cached
                    break;
                }
                ++retries;
                config.sleep(util::backoff_delay(config.backoff, attempt, rng));
                ++attempt;
            }
        }
    };

    unsigned n_workers = static_cast<unsigned>(
        std::min<std::size_t>(static_cast<std::size_t>(config.max_in_flight), texts.size()));
    if (n_workers <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    if (stats) {
        stats->requests += requests.load();
        stats->cache_hits += cache_hits.load();
        stats->retries += retries.load();
        stats->malformed += malformed.load();
    }
    if (abort.load()) {
        throw TransportError("inference batch aborted: " + permanent_error, /*permanent=*/true);
    }
    return results;
}

double answer_ratio(const std::vector<InferResult>& results) {
    if (results.empty()) {
        throw ValidationError("answer_ratio: empty result list");
    }
    std::size_t ok = 0;
    for (const auto& [id, outcome] : results) {
        if (is_prediction(outcome)) {
            ++ok;
        }
    }
    return static_cast<double>(ok) / static_cast<double>(results.size());
}

corpus::Category classify_subreddit(const std::string& description, InferenceBackend& backend,
                                    const BackendConfig& config,
                                    std::vector<std::string>* warnings) {
    if (description.empty()) {
        throw ValidationError("classify_subreddit: empty description");
    }
    PromptTemplate tpl = default_category_template();
    std::string prompt = render_prompt(tpl, description);
    std::mt19937_64 rng(util::derive_seed(0, "categorize/" + description));
    std::string last_error;
    for (int attempt = 0; attempt <= config.retry_cap; ++attempt) {
        if (attempt > 0) {
            config.sleep(util::backoff_delay(config.backoff, attempt - 1, rng));
        }
        CompletionResult r = backend.complete(prompt);
        if (r.status == CompletionResult::Status::permanent) {
            last_error = r.error;
            break;
        }
        if (r.status == CompletionResult::Status::transient) {
            last_error = r.error;
            continue;
        }
        auto doc = nlohmann::json::parse(r.text, nullptr, false);
        std::string name;
        if (!doc.is_discarded() && doc.is_object() && doc.contains("category") &&
            doc["category"].is_string()) {
            name = doc["category"].get<std::string>();
        } else {
            // Tolerate prose around the object, same as prediction parsing.
            auto brace = r.text.find('{');
            if (brace != std::string::npos) {
                auto sub = nlohmann::json::parse(
                    r.text.substr(brace, r.text.rfind('}') - brace + 1), nullptr, false);
                if (!sub.is_discarded() && sub.is_object() && sub.contains("category") &&
                    sub["category"].is_string()) {
                    name = sub["category"].get<std::string>();
                }
            }
        }
        if (!name.empty()) {
            if (auto cat = corpus::Category::parse(name)) {
                return *cat;
            }
            last_error = "category \"" + name + "\" is not in the closed set";
        } else {
            last_error = "no category field in response";
        }
    }
    if (warnings) {
        warnings->push_back("classify_subreddit fell back to Miscellaneous: " + last_error);
    }
    return corpus::Category::miscellaneous();
}

} // namespace polis::backend
