#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polis/backend/parse.hpp"
#include "polis/corpus/types.hpp"

namespace polis::aggregate {

enum class Method { majority, confidence_weighted, maximum_confidence };

std::optional<Method> parse_method(std::string_view s);
std::string to_string(Method m);

struct UserVerdict {
    enum class Resolution { direct, fallback, unresolved };

    std::string user_id;
    Method method = Method::majority;
    std::optional<corpus::Party> party;    // nullopt = unresolved
    std::optional<double> alignment_score; // confidence_weighted only; 0=Dem, 1=Rep
    std::size_t n_texts_used = 0;
    Resolution resolution = Resolution::unresolved;
};

std::string to_string(UserVerdict::Resolution r);

/// Most frequent predicted label. An exact tie falls back to the
/// confidence-weighted decision rule; a score of exactly 0.5 stays
/// unresolved.
UserVerdict majority_vote(const std::vector<backend::Prediction>& preds);

/// Alignment score s = sum(c_i * y_i) / sum(c_i) with y = 1 for Republican;
/// Republican when s > 0.5, Democratic when s < 0.5, unresolved at exactly
/// 0.5. The threshold comparison is done in integer arithmetic, so there is
/// no floating-point ambiguity at the boundary.
UserVerdict confidence_weighted(const std::vector<backend::Prediction>& preds);

/// Majority vote over the subset at the maximum confidence; a subset tie
/// falls back to majority_vote over all predictions (which may itself fall
/// back); n_texts_used stays the subset size.
UserVerdict maximum_confidence(const std::vector<backend::Prediction>& preds);

UserVerdict aggregate_user(const std::string& user_id,
                           const std::vector<backend::Prediction>& preds, Method method);

} // namespace polis::aggregate
