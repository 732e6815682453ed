#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <json.hpp>

#include "polis/corpus/tokenizer.hpp"
#include "polis/corpus/types.hpp"

namespace polis::corpus {

inline constexpr std::size_t kDefaultMinTokens = 10;
inline constexpr std::size_t kDefaultMaxTokens = 1000;
inline constexpr std::size_t kDefaultUndersampleCap = 10;

/// Retains users with mean_comment_score strictly above `threshold`.
/// Reddit-only; the presence of any ddo user is an error.
std::vector<UserRecord> filter_users_by_mean_score(const std::vector<UserRecord>& users,
                                                   double threshold = 0.0);

struct Reject {
    nlohmann::json record;
    std::string reason;
};

struct TokenFilterResult {
    std::vector<RawComment> kept;
    std::vector<Reject> rejects;
};

/// Retains comments whose token count lies in [min_tokens, max_tokens].
/// Counts come from the supplied tokenizer; a tokenizer failure drops the
/// comment into the reject report instead of aborting.
TokenFilterResult filter_by_token_length(const std::vector<RawComment>& comments,
                                         std::size_t min_tokens, std::size_t max_tokens,
                                         const Tokenizer& tokenizer);

/// Concatenates each user's comments within one subreddit (chronological,
/// newline-separated) into a single TextUnit. Comments posted in the seed
/// communities are dropped first. Categories come from `subreddit_category`;
/// a missing entry maps to Miscellaneous with a warning.
std::vector<TextUnit> build_subreddit_texts(
    const std::vector<RawComment>& comments, const std::set<std::string>& seed_subreddits,
    const Tokenizer& tokenizer, const std::map<std::string, Category>& subreddit_category = {},
    std::vector<std::string>* warnings = nullptr);

/// Caps any user's TextUnit count at `cap` by seeded uniform sampling;
/// users at or under the cap are untouched and input order is preserved.
std::vector<TextUnit> undersample_active_users(const std::vector<TextUnit>& texts,
                                               std::size_t cap, std::uint64_t seed);

} // namespace polis::corpus
