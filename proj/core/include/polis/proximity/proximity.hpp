#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polis/backend/embed.hpp"
#include "polis/corpus/types.hpp"

namespace polis::proximity {

struct CategoryProfile {
    corpus::Category category = corpus::Category::miscellaneous();
    std::set<std::string> user_set;
    backend::EmbeddingVector mean_content_embedding;
    backend::EmbeddingVector mean_title_embedding; // zero vector when no titles
    std::size_t n_texts = 0;
    std::size_t n_titles = 0;
};

/// Builds one profile per category present in `texts`. Content means are
/// over member texts; title means sit over the distinct group titles of
/// the category (debate titles for ddo, subreddit descriptions for
/// reddit). Groups without a title are dropped from the title mean with a
/// warning.
std::map<std::string, CategoryProfile>
build_profiles(const std::vector<corpus::TextUnit>& texts,
               const std::map<std::string, std::string>& titles,
               backend::EmbeddingProvider& embedder,
               std::vector<std::string>* warnings = nullptr);

enum class SimilarityKind { content, title };

double embedding_similarity(const CategoryProfile& a, const CategoryProfile& b,
                            SimilarityKind kind);

/// |U_A n U_B| / |U_A u U_B|; both sets empty gives 0.
double user_jaccard(const CategoryProfile& a, const CategoryProfile& b);

/// NPMI of user participation over the given universe. Never-co-occurring
/// categories give -1 and perfect co-occurrence over the whole universe
/// gives +1; independence gives 0. Empty participation on either side is
/// an error (PMI undefined).
double user_npmi(const CategoryProfile& a, const CategoryProfile& b,
                 const std::set<std::string>& universe);

struct ProximityRow {
    std::string category;
    std::optional<double> sim_content;
    std::optional<double> sim_title;
    double jaccard = 0.0;
    double npmi = 0.0;
    std::optional<double> f1;
    std::size_t n_texts = 0;
};

struct CorrelationSummary {
    bool valid = false;
    double r = 0.0;
    double p = 1.0;
    std::string note;
};

struct ProximityReport {
    std::vector<ProximityRow> rows; // one per non-Politics category
    CorrelationSummary content;
    CorrelationSummary title;
    CorrelationSummary jaccard;
    CorrelationSummary npmi;
};

/// Similarities of every category against "Politics" plus the Pearson
/// correlation of each similarity column with per-category F1 (Politics is
/// the reference and stays out of the correlations).
ProximityReport proximity_report(const std::map<std::string, CategoryProfile>& profiles,
                                 const std::map<std::string, double>& f1_by_category);

} // namespace polis::proximity
