#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace polis::corpus {

enum class Party { Republican, Democratic };

/// Accepts "Republican", "Democrat" and "Democratic" (case-insensitive).
std::optional<Party> parse_party(std::string_view s);
std::string to_string(Party p);
Party opposite(Party p);

enum class Source { ddo, reddit };
std::optional<Source> parse_source(std::string_view s);
std::string to_string(Source s);

/// One of the 23 fixed topic names. Construction only succeeds through
/// parse(), so a Category value is always a member of the closed set.
class Category {
public:
    static const std::vector<std::string>& names();
    static std::optional<Category> parse(std::string_view name);
    static Category politics();
    static Category miscellaneous();

    const std::string& name() const;
    bool is_political() const { return index_ == 0; }

    bool operator==(const Category& o) const { return index_ == o.index_; }
    bool operator!=(const Category& o) const { return index_ != o.index_; }
    bool operator<(const Category& o) const { return index_ < o.index_; }

private:
    explicit Category(int index) : index_(index) {}
    int index_;
};

struct UserRecord {
    std::string user_id;
    Party party = Party::Republican;
    Source source = Source::ddo;
    std::optional<double> mean_comment_score; // reddit only
};

struct TextUnit {
    std::string text_id;
    std::string user_id;
    Category category = Category::miscellaneous();
    std::string group_key; // debate id (ddo) or subreddit (reddit)
    std::string body;
    std::size_t token_count = 0;
    std::optional<std::string> created_at; // ISO-8601, kept verbatim
};

struct RawComment {
    std::string user_id;
    std::string subreddit;
    std::string body;
    std::int64_t score = 0;
    std::string created_at;
    std::size_t token_count = 0;
};

struct CorpusManifest {
    Source source = Source::ddo;
    std::map<Party, std::size_t> n_users_by_party;
    std::size_t n_texts = 0;
    std::set<std::string> categories_present;
};

struct Corpus {
    std::vector<UserRecord> users;
    std::vector<TextUnit> texts;
    CorpusManifest manifest;
};

} // namespace polis::corpus
