#include "polis/corpus/preprocess.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "polis/util/errors.hpp"
#include "polis/util/hash.hpp"

namespace polis::corpus {

std::vector<UserRecord> filter_users_by_mean_score(const std::vector<UserRecord>& users,
                                                   double threshold) {
    std::vector<UserRecord> kept;
    kept.reserve(users.size());
    for (const auto& u : users) {
        if (u.source != Source::reddit) {
            throw ValidationError("filter_users_by_mean_score is reddit-only; user \"" +
                                  u.user_id + "\" has source ddo");
        }
        if (!u.mean_comment_score) {
            throw ValidationError("reddit user \"" + u.user_id +
                                  "\" is missing mean_comment_score");
        }
        if (*u.mean_comment_score > threshold) {
            kept.push_back(u);
        }
    }
    return kept;
}

TokenFilterResult filter_by_token_length(const std::vector<RawComment>& comments,
                                         std::size_t min_tokens, std::size_t max_tokens,
                                         const Tokenizer& tokenizer) {
    if (max_tokens <= min_tokens) {
        throw ValidationError("filter_by_token_length requires max > min");
    }
    TokenFilterResult result;
    for (const auto& c : comments) {
        std::size_t n = 0;
        try {
            n = tokenizer.count(c.body);
        } catch (const std::exception& e) {
            nlohmann::json rec = {{"user_id", c.user_id},
                                  {"subreddit", c.subreddit},
                                  {"body", c.body},
                                  {"score", c.score},
                                  {"created_at", c.created_at}};
            result.rejects.push_back({std::move(rec), std::string("tokenizer: ") + e.what()});
            continue;
        }
        if (n >= min_tokens && n <= max_tokens) {
            RawComment kept = c;
            kept.token_count = n;
            result.kept.push_back(std::move(kept));
        }
    }
    return result;
}

std::vector<TextUnit> build_subreddit_texts(
    const std::vector<RawComment>& comments, const std::set<std::string>& seed_subreddits,
    const Tokenizer& tokenizer, const std::map<std::string, Category>& subreddit_category,
    std::vector<std::string>* warnings) {
    // Group surviving comments per (user, subreddit), keeping first-appearance
    // order of pairs so output is deterministic for a given input order.
    struct Group {
        std::vector<const RawComment*> members;
    };
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, Group> groups;
    for (const auto& c : comments) {
        if (seed_subreddits.count(c.subreddit)) {
            continue;
        }
        auto key = std::make_pair(c.user_id, c.subreddit);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            order.push_back(key);
        }
        it->second.members.push_back(&c);
    }

    std::set<std::string> warned;
    std::vector<TextUnit> units;
    units.reserve(order.size());
    for (const auto& key : order) {
        auto& members = groups[key].members;
        // ISO-8601 timestamps sort chronologically as strings.
        std::stable_sort(members.begin(), members.end(),
                         [](const RawComment* a, const RawComment* b) {
                             return a->created_at < b->created_at;
                         });
        TextUnit unit;
        unit.user_id = key.first;
        unit.group_key = key.second;
        unit.text_id = key.second + "/" + key.first;
        for (const auto* c : members) {
            if (!unit.body.empty()) {
                unit.body.push_back('\n');
            }
            unit.body += c->body;
        }
        auto cat = subreddit_category.find(key.second);
        if (cat != subreddit_category.end()) {
            unit.category = cat->second;
        } else {
            unit.category = Category::miscellaneous();
            if (warnings && warned.insert(key.second).second) {
                warnings->push_back("no category for subreddit \"" + key.second +
                                    "\"; assigned Miscellaneous");
            }
        }
        unit.created_at = members.front()->created_at;
        unit.token_count = tokenizer.count(unit.body);
        units.push_back(std::move(unit));
    }
    return units;
}

std::vector<TextUnit> undersample_active_users(const std::vector<TextUnit>& texts,
                                               std::size_t cap, std::uint64_t seed) {
    if (cap < 1) {
        throw ValidationError("undersample cap must be >= 1");
    }
    std::unordered_map<std::string, std::vector<std::size_t>> by_user;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        by_user[texts[i].user_id].push_back(i);
    }
    std::vector<bool> keep(texts.size(), true);
    for (auto& [user_id, indices] : by_user) {
        if (indices.size() <= cap) {
            continue;
        }
        // Per-user substream so the retained subset does not depend on how
        // other users' texts are interleaved in the input.
        std::mt19937_64 rng(util::derive_seed(seed, "undersample/" + user_id));
        std::vector<std::size_t> pool = indices;
        for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        for (std::size_t i = cap; i < pool.size(); ++i) {
            keep[pool[i]] = false;
        }
    }
    std::vector<TextUnit> kept;
    kept.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (keep[i]) {
            kept.push_back(texts[i]);
        }
    }
    return kept;
}

} // namespace polis::corpus
