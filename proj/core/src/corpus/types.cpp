#include "polis/corpus/types.hpp"

#include <algorithm>
#include <cctype>

namespace polis::corpus {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

std::optional<Party> parse_party(std::string_view s) {
    std::string l = lower(s);
    if (l == "republican") {
        return Party::Republican;
    }
    if (l == "democratic" || l == "democrat") {
        return Party::Democratic;
    }
    return std::nullopt;
}

std::string to_string(Party p) {
    return p == Party::Republican ? "Republican" : "Democratic";
}

Party opposite(Party p) {
    return p == Party::Republican ? Party::Democratic : Party::Republican;
}

std::optional<Source> parse_source(std::string_view s) {
    std::string l = lower(s);
    if (l == "ddo") {
        return Source::ddo;
    }
    if (l == "reddit") {
        return Source::reddit;
    }
    return std::nullopt;
}

std::string to_string(Source s) {
    return s == Source::ddo ? "ddo" : "reddit";
}

const std::vector<std::string>& Category::names() {
    // "Politics" must stay at index 0; is_political() relies on it.
    static const std::vector<std::string> kNames = {
        "Politics",  "Religion",      "Economics", "Science",       "Society",
        "Health",    "Sports",        "Music",     "Fashion",       "Movies",
        "TV",        "Games",         "Arts",      "Cars",          "Education",
        "Entertainment", "Funny",     "Miscellaneous", "News",      "People",
        "Philosophy", "Places-Travel", "Technology"};
    return kNames;
}

std::optional<Category> Category::parse(std::string_view name) {
    const auto& all = names();
    std::string l = lower(name);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (lower(all[i]) == l) {
            return Category(static_cast<int>(i));
        }
    }
    return std::nullopt;
}

Category Category::politics() {
    return Category(0);
}

Category Category::miscellaneous() {
    return *parse("Miscellaneous");
}

const std::string& Category::name() const {
    return names()[static_cast<std::size_t>(index_)];
}

} // namespace polis::corpus
