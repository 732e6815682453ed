#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "polis/backend/parse.hpp"
#include "polis/corpus/types.hpp"

namespace polis::lexical {

inline constexpr std::size_t kDefaultMinCount = 10;
inline constexpr std::size_t kWordcloudTopN = 100;
inline constexpr std::size_t kConfidenceQuantiles = 15;

/// Unigram tokens of a body (lowercased, punctuation stripped) plus, when
/// enabled, bigrams of adjacent tokens joined with a space.
std::vector<std::string> extract_tokens(std::string_view body, bool bigrams = false);

struct Vocabulary {
    std::vector<std::string> tokens; // sorted
    std::size_t min_count = kDefaultMinCount;
    std::set<std::string> stopwords;
    bool bigrams = false;

    bool contains(const std::string& token) const;
};

/// Tokens that survive stop-word removal and occur at least `min_count`
/// times across `texts`. With `bigrams`, adjacent non-stopword pairs whose
/// joint count clears the same threshold are added as "a b" entries.
Vocabulary build_vocab(const std::vector<corpus::TextUnit>& texts,
                       const std::set<std::string>& stopwords,
                       std::size_t min_count = kDefaultMinCount, bool bigrams = false);

/// Occurrence counts of every non-stopword token across `texts`
/// (the full token census, not restricted to a vocabulary).
std::map<std::string, std::size_t> token_census(const std::vector<corpus::TextUnit>& texts,
                                                const std::set<std::string>& stopwords,
                                                bool bigrams = false);

std::set<std::string> load_stopwords(const std::string& path);
const std::set<std::string>& default_stopwords();

struct WordConfidence {
    double mean_confidence = 0.0;
    std::size_t n_texts_containing = 0;
};

/// Mean model confidence over the texts containing each vocabulary token;
/// presence-based, so a token repeated within one text counts that text
/// once. Tokens that appear in no predicted text are excluded with a
/// warning.
std::map<std::string, WordConfidence>
word_confidence(const Vocabulary& vocab, const std::vector<corpus::TextUnit>& texts,
                const std::unordered_map<std::string, backend::Prediction>& preds,
                std::vector<std::string>* warnings = nullptr);

/// Equal-frequency bins 1..k by ascending score; ties break on token order
/// and lower bins absorb any remainder, so sizes differ by at most 1.
std::map<std::string, int> quantile_bins(const std::map<std::string, double>& scores,
                                         std::size_t k);

struct DirichletPrior {
    std::map<std::string, double> alpha; // background pseudo-counts per word
    double alpha0 = 0.0;                 // total background mass

    static DirichletPrior from_background(const std::map<std::string, std::size_t>& counts);
    void validate() const;
};

struct LogOddsStat {
    double log_odds = 0.0;
    double se = 0.0;
    double z = 0.0;
};

/// Informative-Dirichlet-prior standardized log-odds of each vocabulary
/// token in the focal category against the background prior:
///   log-odds_w = log((x + a_w) / ((N - x) + (a_0 - a_w))) - log(a_w / (a_0 - a_w))
///   SE^2      = 1/(x + a_w) + 1/((N - x) + (a_0 - a_w)) + 1/a_w + 1/(a_0 - a_w)
///   z         = log-odds / SE
std::map<std::string, LogOddsStat>
log_odds_z(const Vocabulary& vocab, const std::map<std::string, std::size_t>& category_counts,
           std::size_t category_total, const DirichletPrior& prior);

/// Partisan leaning f_w = p_rep / (p_rep + p_dem), where p is the
/// within-party relative frequency of the word. Tokens absent from both
/// parties are excluded.
std::map<std::string, double> partisan_ratio(const std::map<std::string, std::size_t>& counts_rep,
                                             const std::map<std::string, std::size_t>& counts_dem);

struct WordF1 {
    double f1 = 0.0;
    std::size_t n = 0;
    bool low_support = false;
};

/// Macro F1 of the model's predictions restricted to texts containing each
/// token. Tokens whose containing texts cover a single gold class (or
/// fewer than `min_support` texts) carry a low-support flag.
std::map<std::string, WordF1>
word_f1(const Vocabulary& vocab, const std::vector<corpus::TextUnit>& texts,
        const std::unordered_map<std::string, backend::Prediction>& preds,
        const std::unordered_map<std::string, corpus::Party>& gold,
        std::size_t min_support = 2);

struct WordStats {
    std::string token;
    std::size_t count_in_category = 0; // x_w
    std::size_t category_total = 0;    // N
    std::size_t count_rep = 0;
    std::size_t count_dem = 0;
    double mean_confidence = 0.0;
    int quintile = 1;
    double log_odds = 0.0;
    double se = 0.0;
    double z = 0.0;
    double partisan = 0.5; // f_w
    std::size_t n_texts_containing = 0;
    std::optional<double> word_f1;
    bool low_support = false;
};

struct WordcloudEntry {
    std::string token;
    double z = 0.0;
    double f = 0.5;
    double confidence = 0.0;
};

struct WordcloudDoc {
    std::string category;
    std::map<int, std::vector<WordcloudEntry>> quintiles; // 1..5

    std::string to_json() const;
    static WordcloudDoc from_json(const std::string& text);
};

/// Up to `top_n` tokens per quintile by descending z (token order breaks
/// ties); z is the size channel, f the color channel.
WordcloudDoc wordcloud_export(const std::string& category, const std::vector<WordStats>& stats,
                              std::size_t top_n = kWordcloudTopN);

struct QuantilePoint {
    int bin = 1;
    double mean_confidence = 0.0;
    double mean_f1 = 0.0;
    std::size_t n_words = 0;
};

/// Mean word F1 per equal-frequency word-confidence bin (the 15-quantile
/// confidence curve).
std::vector<QuantilePoint> confidence_f1_curve(const std::map<std::string, WordConfidence>& conf,
                                               const std::map<std::string, WordF1>& f1,
                                               std::size_t k = kConfidenceQuantiles);

} // namespace polis::lexical
