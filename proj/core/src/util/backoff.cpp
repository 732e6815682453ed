#include "polis/util/backoff.hpp"

#include <cmath>
#include <thread>

namespace polis::util {

SleepFn real_sleep() {
    return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::chrono::milliseconds backoff_delay(const BackoffPolicy& policy, int attempt,
                                        std::mt19937_64& rng) {
    double ms = static_cast<double>(policy.base.count()) * std::pow(policy.factor, attempt);
    std::uniform_real_distribution<double> u(-policy.jitter_frac, policy.jitter_frac);
    ms *= 1.0 + u(rng);
    if (ms < 0.0) {
        ms = 0.0;
    }
    return std::chrono::milliseconds(static_cast<long long>(ms));
}

} // namespace polis::util
