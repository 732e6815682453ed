#include "polis/lexical/lexical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "polis/metrics/metrics.hpp"
#include "polis/util/errors.hpp"
#include "polis/util/text.hpp"

namespace polis::lexical {

using corpus::Party;
using nlohmann::json;

std::vector<std::string> extract_tokens(std::string_view body, bool bigrams) {
    std::vector<std::string> unigrams = util::word_tokens(body);
    if (!bigrams) {
        return unigrams;
    }
    std::vector<std::string> all = unigrams;
    for (std::size_t i = 0; i + 1 < unigrams.size(); ++i) {
        all.push_back(unigrams[i] + " " + unigrams[i + 1]);
    }
    return all;
}

bool Vocabulary::contains(const std::string& token) const {
    return std::binary_search(tokens.begin(), tokens.end(), token);
}

namespace {

// Census of non-stopword tokens. Bigrams join adjacent tokens that both
// survive the stop list.
void count_into(std::map<std::string, std::size_t>& counts, const corpus::TextUnit& text,
                const std::set<std::string>& stopwords, bool bigrams) {
    std::vector<std::string> unigrams = util::word_tokens(text.body);
    std::vector<const std::string*> kept;
    kept.reserve(unigrams.size());
    for (const auto& t : unigrams) {
        if (!stopwords.count(t)) {
            ++counts[t];
            kept.push_back(&t);
        }
    }
    if (bigrams) {
        // Adjacency is judged after stop-word removal.
        for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
            ++counts[*kept[i] + " " + *kept[i + 1]];
        }
    }
}

std::unordered_set<std::string> presence_set(const corpus::TextUnit& text,
                                             const Vocabulary& vocab) {
    std::unordered_set<std::string> present;
    std::vector<std::string> unigrams = util::word_tokens(text.body);
    for (const auto& t : unigrams) {
        if (vocab.contains(t)) {
            present.insert(t);
        }
    }
    if (vocab.bigrams) {
        std::vector<const std::string*> kept;
        for (const auto& t : unigrams) {
            if (!vocab.stopwords.count(t)) {
                kept.push_back(&t);
            }
        }
        for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
            std::string bigram = *kept[i] + " " + *kept[i + 1];
            if (vocab.contains(bigram)) {
                present.insert(std::move(bigram));
            }
        }
    }
    return present;
}

} // namespace

std::map<std::string, std::size_t> token_census(const std::vector<corpus::TextUnit>& texts,
                                                const std::set<std::string>& stopwords,
                                                bool bigrams) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : texts) {
        count_into(counts, t, stopwords, bigrams);
    }
    return counts;
}

Vocabulary build_vocab(const std::vector<corpus::TextUnit>& texts,
                       const std::set<std::string>& stopwords, std::size_t min_count,
                       bool bigrams) {
    Vocabulary vocab;
    vocab.min_count = min_count;
    vocab.stopwords = stopwords;
    vocab.bigrams = bigrams;
    for (const auto& [token, n] : token_census(texts, stopwords, bigrams)) {
        if (n >= min_count) {
            vocab.tokens.push_back(token);
        }
    }
    // token_census iterates a std::map, so tokens are already sorted.
    return vocab;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingArtifactError("cannot open stopword file " + path);
    }
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        words.insert(util::to_lower_ascii(line));
    }
    return words;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> kWords = {
        "a",       "about",   "above",  "after",   "again",   "against", "all",     "am",
        "an",      "and",     "any",    "are",     "aren",    "as",      "at",      "be",
        "because", "been",    "before", "being",   "below",   "between", "both",    "but",
        "by",      "can",     "cannot", "could",   "couldn",  "did",     "didn",    "do",
        "does",    "doesn",   "doing",  "don",     "down",    "during",  "each",    "few",
        "for",     "from",    "further", "had",    "hadn",    "has",     "hasn",    "have",
        "haven",   "having",  "he",     "her",     "here",    "hers",    "herself", "him",
        "himself", "his",     "how",    "i",       "if",      "in",      "into",    "is",
        "isn",     "it",      "its",    "itself",  "just",    "ll",      "me",      "more",
        "most",    "mustn",   "my",     "myself",  "no",      "nor",     "not",     "now",
        "of",      "off",     "on",     "once",    "only",    "or",      "other",   "ought",
        "our",     "ours",    "ourselves", "out",  "over",    "own",     "re",      "s",
        "same",    "shan",    "she",    "should",  "shouldn", "so",      "some",    "such",
        "t",       "than",    "that",   "the",     "their",   "theirs",  "them",    "themselves",
        "then",    "there",   "these",  "they",    "this",    "those",   "through", "to",
        "too",     "under",   "until",  "up",      "ve",      "very",    "was",     "wasn",
        "we",      "were",    "weren",  "what",    "when",    "where",   "which",   "while",
        "who",     "whom",    "why",    "will",    "with",    "won",     "would",   "wouldn",
        "you",     "your",    "yours",  "yourself", "yourselves",
    };
    return kWords;
}

std::map<std::string, WordConfidence>
word_confidence(const Vocabulary& vocab, const std::vector<corpus::TextUnit>& texts,
                const std::unordered_map<std::string, backend::Prediction>& preds,
                std::vector<std::string>* warnings) {
    std::map<std::string, std::pair<double, std::size_t>> acc; // sum, count
    for (const auto& text : texts) {
        auto pred = preds.find(text.text_id);
        if (pred == preds.end()) {
            continue; // malformed responses are filtered upstream
        }
        for (const auto& token : presence_set(text, vocab)) {
            auto& [sum, n] = acc[token];
            sum += static_cast<double>(pred->second.confidence);
            ++n;
        }
    }
    std::map<std::string, WordConfidence> out;
    for (const auto& token : vocab.tokens) {
        auto it = acc.find(token);
        if (it == acc.end()) {
            if (warnings) {
                warnings->push_back("token \"" + token + "\" appears in no predicted text");
            }
            continue;
        }
        out[token] = WordConfidence{it->second.first / static_cast<double>(it->second.second),
                                    it->second.second};
    }
    return out;
}

std::map<std::string, int> quantile_bins(const std::map<std::string, double>& scores,
                                         std::size_t k) {
    if (k < 1) {
        throw ValidationError("quantile_bins: k must be >= 1");
    }
    if (scores.size() < k) {
        throw ValidationError("quantile_bins: fewer tokens (" +
                              std::to_string(scores.size()) + ") than bins (" +
                              std::to_string(k) + ")");
    }
    std::vector<std::pair<double, std::string>> ranked;
    ranked.reserve(scores.size());
    for (const auto& [token, score] : scores) {
        ranked.emplace_back(score, token);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second < b.second; // deterministic tie-break by token
    });

    std::size_t base = ranked.size() / k;
    std::size_t remainder = ranked.size() % k;
    std::map<std::string, int> bins;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < k; ++b) {
        std::size_t width = base + (b < remainder ? 1 : 0); // lower bins absorb remainder
        for (std::size_t i = 0; i < width; ++i, ++pos) {
            bins[ranked[pos].second] = static_cast<int>(b + 1);
        }
    }
    return bins;
}

DirichletPrior DirichletPrior::from_background(const std::map<std::string, std::size_t>& counts) {
    DirichletPrior prior;
    for (const auto& [token, n] : counts) {
        if (n == 0) {
            continue;
        }
        prior.alpha[token] = static_cast<double>(n);
        prior.alpha0 += static_cast<double>(n);
    }
    return prior;
}

void DirichletPrior::validate() const {
    double sum = 0.0;
    for (const auto& [token, a] : alpha) {
        if (a <= 0.0) {
            throw ValidationError("DirichletPrior: non-positive pseudo-count for \"" + token +
                                  "\"");
        }
        sum += a;
    }
    if (std::abs(sum - alpha0) > 1e-9 * std::max(1.0, std::abs(alpha0))) {
        throw ValidationError("DirichletPrior: alpha0 does not match the recomputed sum");
    }
}

std::map<std::string, LogOddsStat>
log_odds_z(const Vocabulary& vocab, const std::map<std::string, std::size_t>& category_counts,
           std::size_t category_total, const DirichletPrior& prior) {
    std::map<std::string, LogOddsStat> out;
    double n_total = static_cast<double>(category_total);
    for (const auto& token : vocab.tokens) {
        auto count_it = category_counts.find(token);
        double x = count_it == category_counts.end()
                       ? 0.0
                       : static_cast<double>(count_it->second);
        if (x > n_total) {
            throw ValidationError("log_odds_z: count of \"" + token +
                                  "\" exceeds the category total");
        }
        auto alpha_it = prior.alpha.find(token);
        if (alpha_it == prior.alpha.end() || alpha_it->second <= 0.0) {
            throw ValidationError("log_odds_z: prior has no mass for token \"" + token + "\"");
        }
        double aw = alpha_it->second;
        double rest = prior.alpha0 - aw;
        if (rest <= 0.0) {
            throw ValidationError("log_odds_z: token \"" + token +
                                  "\" holds the entire prior mass");
        }
        LogOddsStat stat;
        stat.log_odds =
            std::log((x + aw) / ((n_total - x) + rest)) - std::log(aw / rest);
        stat.se = std::sqrt(1.0 / (x + aw) + 1.0 / ((n_total - x) + rest) + 1.0 / aw +
                            1.0 / rest);
        stat.z = stat.log_odds / stat.se;
        out[token] = stat;
    }
    return out;
}

std::map<std::string, double> partisan_ratio(const std::map<std::string, std::size_t>& counts_rep,
                                             const std::map<std::string, std::size_t>& counts_dem) {
    double total_rep = 0.0;
    double total_dem = 0.0;
    for (const auto& [token, n] : counts_rep) {
        total_rep += static_cast<double>(n);
    }
    for (const auto& [token, n] : counts_dem) {
        total_dem += static_cast<double>(n);
    }
    if (total_rep == 0.0 || total_dem == 0.0) {
        throw ValidationError("partisan_ratio: a party has zero total tokens");
    }
    std::set<std::string> tokens;
    for (const auto& [token, n] : counts_rep) {
        tokens.insert(token);
    }
    for (const auto& [token, n] : counts_dem) {
        tokens.insert(token);
    }
    std::map<std::string, double> out;
    for (const auto& token : tokens) {
        auto r = counts_rep.find(token);
        auto d = counts_dem.find(token);
        double p_rep = r == counts_rep.end() ? 0.0 : static_cast<double>(r->second) / total_rep;
        double p_dem = d == counts_dem.end() ? 0.0 : static_cast<double>(d->second) / total_dem;
        if (p_rep == 0.0 && p_dem == 0.0) {
            continue;
        }
        out[token] = p_rep / (p_rep + p_dem);
    }
    return out;
}

std::map<std::string, WordF1>
word_f1(const Vocabulary& vocab, const std::vector<corpus::TextUnit>& texts,
        const std::unordered_map<std::string, backend::Prediction>& preds,
        const std::unordered_map<std::string, Party>& gold, std::size_t min_support) {
    std::map<std::string, std::vector<std::pair<Party, Party>>> per_token;
    for (const auto& text : texts) {
        auto pred = preds.find(text.text_id);
        if (pred == preds.end()) {
            continue;
        }
        auto truth = gold.find(text.user_id);
        if (truth == gold.end()) {
            continue;
        }
        for (const auto& token : presence_set(text, vocab)) {
            per_token[token].emplace_back(truth->second, pred->second.party);
        }
    }
    std::map<std::string, WordF1> out;
    for (const auto& [token, pairs] : per_token) {
        WordF1 w;
        w.f1 = metrics::macro_f1(pairs);
        w.n = pairs.size();
        bool single_class = true;
        for (const auto& [truth, pred] : pairs) {
            if (truth != pairs.front().first) {
                single_class = false;
                break;
            }
        }
        w.low_support = single_class || pairs.size() < min_support;
        out[token] = w;
    }
    return out;
}

std::string WordcloudDoc::to_json() const {
    json quintile_obj = json::object();
    for (const auto& [q, entries] : quintiles) {
        json arr = json::array();
        for (const auto& e : entries) {
            arr.push_back({{"token", e.token},
                           {"z", e.z},
                           {"f", e.f},
                           {"confidence", e.confidence}});
        }
        quintile_obj["Q" + std::to_string(q)] = std::move(arr);
    }
    json doc = {{"category", category}, {"quintiles", quintile_obj}};
    return doc.dump(2);
}

WordcloudDoc WordcloudDoc::from_json(const std::string& text) {
    json doc = json::parse(text);
    WordcloudDoc out;
    out.category = doc.at("category").get<std::string>();
    for (const auto& [key, arr] : doc.at("quintiles").items()) {
        int q = std::stoi(key.substr(1));
        std::vector<WordcloudEntry> entries;
        for (const auto& item : arr) {
            WordcloudEntry e;
            e.token = item.at("token").get<std::string>();
            e.z = item.at("z").get<double>();
            e.f = item.at("f").get<double>();
            e.confidence = item.at("confidence").get<double>();
            entries.push_back(std::move(e));
        }
        out.quintiles[q] = std::move(entries);
    }
    return out;
}

WordcloudDoc wordcloud_export(const std::string& category, const std::vector<WordStats>& stats,
                              std::size_t top_n) {
    WordcloudDoc doc;
    doc.category = category;
    std::map<int, std::vector<const WordStats*>> by_quintile;
    for (const auto& s : stats) {
        by_quintile[s.quintile].push_back(&s);
    }
    for (auto& [q, entries] : by_quintile) {
        std::sort(entries.begin(), entries.end(), [](const WordStats* a, const WordStats* b) {
            if (a->z != b->z) {
                return a->z > b->z;
            }
            return a->token < b->token;
        });
        if (entries.size() > top_n) {
            entries.resize(top_n);
        }
        std::vector<WordcloudEntry> exported;
        exported.reserve(entries.size());
        for (const auto* s : entries) {
            exported.push_back({s->token, s->z, s->partisan, s->mean_confidence});
        }
        doc.quintiles[q] = std::move(exported);
    }
    return doc;
}

std::vector<QuantilePoint> confidence_f1_curve(const std::map<std::string, WordConfidence>& conf,
                                               const std::map<std::string, WordF1>& f1,
                                               std::size_t k) {
    std::map<std::string, double> scores;
    for (const auto& [token, c] : conf) {
        if (f1.count(token)) {
            scores[token] = c.mean_confidence;
        }
    }
    auto bins = quantile_bins(scores, k);
    std::map<int, QuantilePoint> acc;
    for (const auto& [token, bin] : bins) {
        auto& point = acc[bin];
        point.bin = bin;
        point.mean_confidence += conf.at(token).mean_confidence;
        point.mean_f1 += f1.at(token).f1;
        ++point.n_words;
    }
    std::vector<QuantilePoint> curve;
    for (auto& [bin, point] : acc) {
        point.mean_confidence /= static_cast<double>(point.n_words);
        point.mean_f1 /= static_cast<double>(point.n_words);
        curve.push_back(point);
    }
    return curve;
}

} // namespace polis::lexical
