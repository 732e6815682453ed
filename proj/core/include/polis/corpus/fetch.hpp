#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polis/corpus/types.hpp"
#include "polis/util/backoff.hpp"

namespace polis::corpus {

struct HttpResponse {
    int status = 0; // 0 = connection failure
    std::string body;
};

/// Minimal GET surface so tests can script responses.
class HttpClient {
public:
    virtual ~HttpClient() = default;
    virtual HttpResponse get(const std::string& path_and_query) = 0;
};

/// Real client over cpp-httplib. `host` includes the scheme,
/// e.g. "https://www.reddit.com".
std::unique_ptr<HttpClient> make_httplib_client(const std::string& host,
                                                const std::string& user_agent);

struct FetchPolicy {
    std::size_t page_size = 100; // per-request listing cap
    util::BackoffPolicy backoff;
    std::chrono::milliseconds politeness_delay{1000};
    std::uint64_t jitter_seed = 0;
    util::SleepFn sleep = util::real_sleep();
};

struct FetchStats {
    std::size_t requests = 0;
    std::size_t retries = 0;
    std::size_t pages = 0;
};

/// Pulls up to `limit` recent comments from a subreddit listing endpoint,
/// paging with the listing cursor and sleeping `politeness_delay` between
/// pages. Rate-limit and 5xx responses are retried with exponential
/// backoff up to the policy cap, then surface as a transient
/// TransportError; other 4xx responses are permanent.
std::vector<RawComment> fetch_subreddit_listing(const std::string& subreddit, std::size_t limit,
                                                HttpClient& client,
                                                const FetchPolicy& policy = {},
                                                FetchStats* stats = nullptr);

} // namespace polis::corpus
