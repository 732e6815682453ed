#include "polis/corpus/fetch.hpp"

#include <ctime>

#include <httplib.h>
#include <json.hpp>

#include "polis/util/errors.hpp"

namespace polis::corpus {

namespace {

class HttplibClient : public HttpClient {
public:
    HttplibClient(std::string host, std::string user_agent)
        : client_(host), user_agent_(std::move(user_agent)) {
        client_.set_follow_location(true);
        client_.set_connection_timeout(10);
        client_.set_read_timeout(30);
    }

    HttpResponse get(const std::string& path_and_query) override {
        httplib::Headers headers = {{"User-Agent", user_agent_}};
        auto res = client_.Get(path_and_query, headers);
        if (!res) {
            return {0, ""};
        }
        return {res->status, res->body};
    }

private:
    httplib::Client client_;
    std::string user_agent_;
};

std::string epoch_to_iso8601(double epoch_seconds) {
    std::time_t t = static_cast<std::time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool retryable(int status) {
    return status == 0 || status == 429 || status >= 500;
}

HttpResponse get_with_retry(HttpClient& client, const std::string& path,
                            const FetchPolicy& policy, std::mt19937_64& rng,
                            FetchStats* stats) {
    HttpResponse res;
    for (int attempt = 0;; ++attempt) {
        res = client.get(path);
        if (stats) {
            ++stats->requests;
        }
        if (!retryable(res.status)) {
            return res;
        }
        if (attempt >= policy.backoff.retry_cap) {
            throw TransportError("transient HTTP failure exhausted " +
                                     std::to_string(policy.backoff.retry_cap) +
                                     " retries (last status " + std::to_string(res.status) +
                                     ") for " + path,
                                 /*permanent=*/false);
        }
        if (stats) {
            ++stats->retries;
        }
        policy.sleep(util::backoff_delay(policy.backoff, attempt, rng));
    }
}

} // namespace

std::unique_ptr<HttpClient> make_httplib_client(const std::string& host,
                                                const std::string& user_agent) {
    return std::make_unique<HttplibClient>(host, user_agent);
}

std::vector<RawComment> fetch_subreddit_listing(const std::string& subreddit, std::size_t limit,
                                                HttpClient& client, const FetchPolicy& policy,
                                                FetchStats* stats) {
    std::vector<RawComment> comments;
    if (limit == 0) {
        return comments;
    }
    std::mt19937_64 rng(policy.jitter_seed);
    std::string after;
    std::size_t pages_done = 0;
    while (comments.size() < limit) {
        std::size_t page = std::min(policy.page_size, limit - comments.size());
        std::string path = "/r/" + subreddit + "/comments.json?limit=" + std::to_string(page);
        if (!after.empty()) {
            path += "&after=" + after;
        }
        if (pages_done > 0) {
            policy.sleep(policy.politeness_delay);
        }
        HttpResponse res = get_with_retry(client, path, policy, rng, stats);
        if (res.status != 200) {
            throw TransportError("HTTP " + std::to_string(res.status) + " fetching " + path,
                                 /*permanent=*/true);
        }
        auto doc = nlohmann::json::parse(res.body, nullptr, false);
        if (doc.is_discarded() || !doc.contains("data") || !doc["data"].contains("children")) {
            throw TransportError("unexpected listing payload for " + path, /*permanent=*/true);
        }
        ++pages_done;
        if (stats) {
            ++stats->pages;
        }
        const auto& children = doc["data"]["children"];
        if (children.empty()) {
            break;
        }
        for (const auto& child : children) {
            if (comments.size() >= limit) {
                break;
            }
            const auto& d = child.contains("data") ? child["data"] : child;
            RawComment c;
            c.user_id = d.value("author", "");
            c.subreddit = d.value("subreddit", subreddit);
            c.body = d.value("body", "");
            c.score = d.value("score", 0);
            if (d.contains("created_utc") && d["created_utc"].is_number()) {
                c.created_at = epoch_to_iso8601(d["created_utc"].get<double>());
            } else if (d.contains("created_at") && d["created_at"].is_string()) {
                c.created_at = d["created_at"].get<std::string>();
            }
            comments.push_back(std::move(c));
        }
        if (!doc["data"].contains("after") || doc["data"]["after"].is_null()) {
            break;
        }
        after = doc["data"]["after"].get<std::string>();
    }
    return comments;
}

} // namespace polis::corpus
