#pragma once

#include <chrono>
#include <functional>
#include <random>

namespace polis::util {

// Base 1s, factor 2, +/-20% jitter, at most 5 retries.
struct BackoffPolicy {
    std::chrono::milliseconds base{1000};
    double factor = 2.0;
    double jitter_frac = 0.2;
    int retry_cap = 5;
};

using SleepFn = std::function<void(std::chrono::milliseconds)>;

SleepFn real_sleep();

std::chrono::milliseconds backoff_delay(const BackoffPolicy& policy, int attempt,
                                        std::mt19937_64& rng);

} // namespace polis::util
