#include "polis/aggregate/aggregate.hpp"

#include <algorithm>

#include "polis/util/errors.hpp"

namespace polis::aggregate {

using backend::Prediction;
using corpus::Party;

std::optional<Method> parse_method(std::string_view s) {
    if (s == "majority") {
        return Method::majority;
    }
    if (s == "confidence_weighted") {
        return Method::confidence_weighted;
    }
    if (s == "maximum_confidence") {
        return Method::maximum_confidence;
    }
    return std::nullopt;
}

std::string to_string(Method m) {
    switch (m) {
    case Method::majority:
        return "majority";
    case Method::confidence_weighted:
        return "confidence_weighted";
    case Method::maximum_confidence:
        return "maximum_confidence";
    }
    return "";
}

std::string to_string(UserVerdict::Resolution r) {
    switch (r) {
    case UserVerdict::Resolution::direct:
        return "direct";
    case UserVerdict::Resolution::fallback:
        return "fallback";
    case UserVerdict::Resolution::unresolved:
        return "unresolved";
    }
    return "";
}

namespace {

void require_nonempty(const std::vector<Prediction>& preds, const char* op) {
    if (preds.empty()) {
        throw ValidationError(std::string(op) + ": empty prediction list");
    }
    for (const auto& p : preds) {
        if (p.confidence < 1 || p.confidence > 5) {
            throw ValidationError(std::string(op) + ": confidence out of range");
        }
    }
}

// Decision rule shared by confidence_weighted and the tie fallbacks:
// compares 2 * sum(c * y) against sum(c) exactly.
std::optional<Party> weighted_decision(const std::vector<Prediction>& preds, long long* num_out,
                                       long long* den_out) {
    long long num = 0;
    long long den = 0;
    for (const auto& p : preds) {
        den += p.confidence;
        if (p.party == Party::Republican) {
            num += p.confidence;
        }
    }
    if (num_out) {
        *num_out = num;
    }
    if (den_out) {
        *den_out = den;
    }
    if (2 * num > den) {
        return Party::Republican;
    }
    if (2 * num < den) {
        return Party::Democratic;
    }
    return std::nullopt;
}

// Modal label; nullopt on an exact tie.
std::optional<Party> modal(const std::vector<Prediction>& preds) {
    long long rep = 0;
    for (const auto& p : preds) {
        if (p.party == Party::Republican) {
            ++rep;
        }
    }
    long long dem = static_cast<long long>(preds.size()) - rep;
    if (rep > dem) {
        return Party::Republican;
    }
    if (dem > rep) {
        return Party::Democratic;
    }
    return std::nullopt;
}

} // namespace

UserVerdict majority_vote(const std::vector<Prediction>& preds) {
    require_nonempty(preds, "majority_vote");
    UserVerdict v;
    v.method = Method::majority;
    v.n_texts_used = preds.size();
    if (auto winner = modal(preds)) {
        v.party = winner;
        v.resolution = UserVerdict::Resolution::direct;
        return v;
    }
    if (auto fallback = weighted_decision(preds, nullptr, nullptr)) {
        v.party = fallback;
        v.resolution = UserVerdict::Resolution::fallback;
        return v;
    }
    v.resolution = UserVerdict::Resolution::unresolved;
    return v;
}

UserVerdict confidence_weighted(const std::vector<Prediction>& preds) {
    require_nonempty(preds, "confidence_weighted");
    UserVerdict v;
    v.method = Method::confidence_weighted;
    v.n_texts_used = preds.size();
    long long num = 0;
    long long den = 0;
    auto decision = weighted_decision(preds, &num, &den);
    v.alignment_score = static_cast<double>(num) / static_cast<double>(den);
    if (decision) {
        v.party = decision;
        v.resolution = UserVerdict::Resolution::direct;
    } else {
        v.resolution = UserVerdict::Resolution::unresolved;
    }
    return v;
}

UserVerdict maximum_confidence(const std::vector<Prediction>& preds) {
    require_nonempty(preds, "maximum_confidence");
    int top = 0;
    for (const auto& p : preds) {
        top = std::max(top, p.confidence);
    }
    std::vector<Prediction> subset;
    for (const auto& p : preds) {
        if (p.confidence == top) {
            subset.push_back(p);
        }
    }
    UserVerdict v;
    v.method = Method::maximum_confidence;
    v.n_texts_used = subset.size();
    if (auto winner = modal(subset)) {
        v.party = winner;
        v.resolution = UserVerdict::Resolution::direct;
        return v;
    }
    UserVerdict full = majority_vote(preds);
    if (full.party) {
        v.party = full.party;
        v.resolution = UserVerdict::Resolution::fallback;
    } else {
        v.resolution = UserVerdict::Resolution::unresolved;
    }
    return v;
}

UserVerdict aggregate_user(const std::string& user_id, const std::vector<Prediction>& preds,
                           Method method) {
    UserVerdict v;
    switch (method) {
    case Method::majority:
        v = majority_vote(preds);
        break;
    case Method::confidence_weighted:
        v = confidence_weighted(preds);
        break;
    case Method::maximum_confidence:
        v = maximum_confidence(preds);
        break;
    }
    v.user_id = user_id;
    return v;
}

} // namespace polis::aggregate
