#include "polis/corpus/load.hpp"

#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "polis/util/errors.hpp"
#include "polis/util/jsonl.hpp"

namespace polis::corpus {

using util::json;

namespace {

std::string loc(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

Party parse_party_field(const json& obj, const std::filesystem::path& path,
                        std::size_t line_no) {
    if (!obj.contains("party") || !obj["party"].is_string()) {
        throw ValidationError(loc(path, line_no) + ": missing or non-string field \"party\"");
    }
    auto party = parse_party(obj["party"].get<std::string>());
    if (!party) {
        throw ValidationError(loc(path, line_no) + ": field \"party\": unknown party \"" +
                              obj["party"].get<std::string>() + "\"");
    }
    return *party;
}

Category parse_category_field(const json& obj, const std::filesystem::path& path,
                              std::size_t line_no) {
    if (!obj.contains("category") || !obj["category"].is_string()) {
        throw ValidationError(loc(path, line_no) +
                              ": missing or non-string field \"category\"");
    }
    auto cat = Category::parse(obj["category"].get<std::string>());
    if (!cat) {
        throw ValidationError(loc(path, line_no) + ": unknown category \"" +
                              obj["category"].get<std::string>() + "\"");
    }
    return *cat;
}

std::string require_string(const json& obj, const char* key,
                           const std::filesystem::path& path, std::size_t line_no) {
    if (!obj.contains(key) || !obj[key].is_string() || obj[key].get<std::string>().empty()) {
        throw ValidationError(loc(path, line_no) + ": missing or empty field \"" +
                              std::string(key) + "\"");
    }
    return obj[key].get<std::string>();
}

struct Accumulator {
    Source source;
    const Tokenizer& tokenizer;
    std::vector<UserRecord> users;
    std::vector<TextUnit> texts;
    std::unordered_map<std::string, std::size_t> user_index;
    std::unordered_set<std::string> text_ids;
    std::unordered_set<std::string> user_group_pairs;

    void add_user(UserRecord rec, const std::filesystem::path& path, std::size_t line_no) {
        auto it = user_index.find(rec.user_id);
        if (it == user_index.end()) {
            user_index.emplace(rec.user_id, users.size());
            users.push_back(std::move(rec));
            return;
        }
        const UserRecord& prev = users[it->second];
        if (prev.party != rec.party) {
            throw ValidationError(loc(path, line_no) + ": user \"" + rec.user_id +
                                  "\" has conflicting party labels");
        }
    }

    void add_text(TextUnit unit, const std::filesystem::path& path, std::size_t line_no) {
        if (unit.body.empty()) {
            throw ValidationError(loc(path, line_no) + ": empty body for text \"" +
                                  unit.text_id + "\"");
        }
        if (!text_ids.insert(unit.text_id).second) {
            throw ValidationError(loc(path, line_no) + ": duplicate text_id \"" +
                                  unit.text_id + "\"");
        }
        if (source == Source::reddit) {
            std::string pair = unit.user_id + "\x1f" + unit.group_key;
            if (!user_group_pairs.insert(pair).second) {
                throw ValidationError(loc(path, line_no) + ": duplicate (user, subreddit) pair (" +
                                      unit.user_id + ", " + unit.group_key + ")");
            }
        }
        unit.token_count = tokenizer.count(unit.body);
        texts.push_back(std::move(unit));
    }
};

void load_combined_file(const std::filesystem::path& path, Source source, Accumulator& acc) {
    const char* group_field = source == Source::ddo ? "debate_id" : "subreddit";
    util::read_jsonl(path, [&](std::size_t line_no, const json& obj) {
        UserRecord user;
        user.user_id = require_string(obj, "user_id", path, line_no);
        user.party = parse_party_field(obj, path, line_no);
        user.source = source;
        if (obj.contains("mean_comment_score") && obj["mean_comment_score"].is_number()) {
            user.mean_comment_score = obj["mean_comment_score"].get<double>();
        }
        acc.add_user(user, path, line_no);

        TextUnit unit;
        unit.user_id = user.user_id;
        unit.category = parse_category_field(obj, path, line_no);
        unit.group_key = require_string(obj, group_field, path, line_no);
        if (obj.contains("rounds")) {
            if (!obj["rounds"].is_array() || obj["rounds"].empty()) {
                throw ValidationError(loc(path, line_no) +
                                      ": field \"rounds\" must be a non-empty array");
            }
            std::string body;
            for (const auto& round : obj["rounds"]) {
                if (!round.is_string()) {
                    throw ValidationError(loc(path, line_no) +
                                          ": field \"rounds\" must contain strings");
                }
                if (!body.empty()) {
                    body += "\n\n"; // rounds joined in round order
                }
                body += round.get<std::string>();
            }
            unit.body = std::move(body);
        } else {
            unit.body = require_string(obj, "body", path, line_no);
        }
        unit.text_id = obj.contains("text_id") && obj["text_id"].is_string()
                           ? obj["text_id"].get<std::string>()
                           : unit.group_key + "/" + unit.user_id;
        if (obj.contains("created_at") && obj["created_at"].is_string()) {
            unit.created_at = obj["created_at"].get<std::string>();
        }
        acc.add_text(std::move(unit), path, line_no);
    });
}

void load_canonical_dir(const std::filesystem::path& dir, Source source, Accumulator& acc) {
    auto users_path = dir / "users.jsonl";
    auto texts_path = dir / "texts.jsonl";
    if (!std::filesystem::exists(users_path) || !std::filesystem::exists(texts_path)) {
        throw MissingArtifactError("canonical corpus directory " + dir.string() +
                                   " must contain users.jsonl and texts.jsonl");
    }
    util::read_jsonl(users_path, [&](std::size_t line_no, const json& obj) {
        UserRecord user;
        user.user_id = require_string(obj, "user_id", users_path, line_no);
        user.party = parse_party_field(obj, users_path, line_no);
        std::string src = require_string(obj, "source", users_path, line_no);
        auto parsed = parse_source(src);
        if (!parsed) {
            throw ValidationError(loc(users_path, line_no) + ": unknown source \"" + src + "\"");
        }
        if (*parsed != source) {
            throw ValidationError(loc(users_path, line_no) + ": record source \"" + src +
                                  "\" does not match requested corpus source");
        }
        user.source = *parsed;
        if (obj.contains("mean_comment_score") && obj["mean_comment_score"].is_number()) {
            user.mean_comment_score = obj["mean_comment_score"].get<double>();
        }
        if (acc.user_index.count(user.user_id)) {
            throw ValidationError(loc(users_path, line_no) + ": duplicate user_id \"" +
                                  user.user_id + "\"");
        }
        acc.add_user(user, users_path, line_no);
    });
    util::read_jsonl(texts_path, [&](std::size_t line_no, const json& obj) {
        TextUnit unit;
        unit.text_id = require_string(obj, "text_id", texts_path, line_no);
        unit.user_id = require_string(obj, "user_id", texts_path, line_no);
        unit.category = parse_category_field(obj, texts_path, line_no);
        unit.group_key = require_string(obj, "group_key", texts_path, line_no);
        unit.body = require_string(obj, "body", texts_path, line_no);
        if (obj.contains("created_at") && obj["created_at"].is_string()) {
            unit.created_at = obj["created_at"].get<std::string>();
        }
        if (!acc.user_index.count(unit.user_id)) {
            throw ValidationError(loc(texts_path, line_no) + ": text \"" + unit.text_id +
                                  "\" references unknown user \"" + unit.user_id + "\"");
        }
        acc.add_text(std::move(unit), texts_path, line_no);
    });
}

} // namespace

Corpus load_corpus(const std::filesystem::path& path, Source source,
                   const Tokenizer& tokenizer) {
    if (!std::filesystem::exists(path)) {
        throw MissingArtifactError("corpus path does not exist: " + path.string());
    }
    Accumulator acc{source, tokenizer, {}, {}, {}, {}, {}};
    if (std::filesystem::is_directory(path)) {
        load_canonical_dir(path, source, acc);
    } else {
        load_combined_file(path, source, acc);
    }
    Corpus corpus;
    corpus.users = std::move(acc.users);
    corpus.texts = std::move(acc.texts);
    corpus.manifest = build_manifest(source, corpus.users, corpus.texts);
    return corpus;
}

CorpusManifest build_manifest(Source source, const std::vector<UserRecord>& users,
                              const std::vector<TextUnit>& texts) {
    CorpusManifest m;
    m.source = source;
    m.n_users_by_party[Party::Republican] = 0;
    m.n_users_by_party[Party::Democratic] = 0;
    for (const auto& u : users) {
        ++m.n_users_by_party[u.party];
    }
    m.n_texts = texts.size();
    for (const auto& t : texts) {
        m.categories_present.insert(t.category.name());
    }
    return m;
}

void verify_manifest(const Corpus& corpus) {
    CorpusManifest fresh = build_manifest(corpus.manifest.source, corpus.users, corpus.texts);
    if (fresh.n_users_by_party != corpus.manifest.n_users_by_party ||
        fresh.n_texts != corpus.manifest.n_texts ||
        fresh.categories_present != corpus.manifest.categories_present) {
        throw ValidationError("corpus manifest counts do not match recomputed counts");
    }
}

void write_corpus(const std::filesystem::path& dir, const Corpus& corpus) {
    std::filesystem::create_directories(dir);
    std::vector<json> user_lines;
    user_lines.reserve(corpus.users.size());
    for (const auto& u : corpus.users) {
        json line = {{"user_id", u.user_id},
                     {"party", to_string(u.party)},
                     {"source", to_string(u.source)},
                     {"mean_comment_score",
                      u.mean_comment_score ? json(*u.mean_comment_score) : json(nullptr)}};
        user_lines.push_back(std::move(line));
    }
    util::write_jsonl(dir / "users.jsonl", user_lines);

    std::vector<json> text_lines;
    text_lines.reserve(corpus.texts.size());
    for (const auto& t : corpus.texts) {
        json line = {{"text_id", t.text_id},
                     {"user_id", t.user_id},
                     {"category", t.category.name()},
                     {"group_key", t.group_key},
                     {"body", t.body},
                     {"created_at", t.created_at ? json(*t.created_at) : json(nullptr)}};
        text_lines.push_back(std::move(line));
    }
    util::write_jsonl(dir / "texts.jsonl", text_lines);

    json manifest = {{"source", to_string(corpus.manifest.source)},
                     {"n_users_by_party",
                      {{"Republican", corpus.manifest.n_users_by_party.at(Party::Republican)},
                       {"Democratic", corpus.manifest.n_users_by_party.at(Party::Democratic)}}},
                     {"n_texts", corpus.manifest.n_texts},
                     {"categories_present", corpus.manifest.categories_present}};
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    out << manifest.dump(2) << '\n';
}

} // namespace polis::corpus
