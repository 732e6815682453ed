#include "polis/baseline/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polis/util/text.hpp"

namespace polis::baseline {

namespace {

std::map<std::string, std::size_t> term_counts(const corpus::TextUnit& text,
                                               const std::set<std::string>& stopwords) {
    std::map<std::string, std::size_t> counts;
    for (const auto& token : util::word_tokens(text.body)) {
        if (!stopwords.count(token)) {
            ++counts[token];
        }
    }
    return counts;
}

} // namespace

TfidfModel TfidfModel::fit(const std::vector<corpus::TextUnit>& texts,
                           const TfidfParams& params) {
    std::map<std::string, std::size_t> df;
    for (const auto& text : texts) {
        for (const auto& [token, n] : term_counts(text, params.stopwords)) {
            ++df[token];
        }
    }
    TfidfModel model;
    double n_docs = static_cast<double>(texts.size());
    for (const auto& [token, doc_freq] : df) {
        if (doc_freq < params.min_df) {
            continue;
        }
        model.index_.emplace(token, static_cast<std::uint32_t>(model.vocab_.size()));
        model.vocab_.push_back(token);
        model.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(doc_freq))) +
                             1.0);
    }
    return model;
}

FeatureMatrix TfidfModel::transform(const std::vector<corpus::TextUnit>& texts) const {
    FeatureMatrix X = transform_counts(texts);
    for (std::size_t r = 0; r < X.rows.size(); ++r) {
        auto& row = X.rows[r];
        double sq = 0.0;
        for (auto& [col, value] : row) {
            value *= idf_[col];
            sq += value * value;
        }
        if (sq > 0.0) {
            double inv = 1.0 / std::sqrt(sq);
            for (auto& [col, value] : row) {
                value *= inv;
            }
        }
    }
    return X;
}

FeatureMatrix TfidfModel::transform_counts(const std::vector<corpus::TextUnit>& texts) const {
    FeatureMatrix X;
    X.n_cols = vocab_.size();
    X.rows.reserve(texts.size());
    for (std::size_t r = 0; r < texts.size(); ++r) {
        std::map<std::uint32_t, double> row;
        for (const auto& token : util::word_tokens(texts[r].body)) {
            auto it = index_.find(token);
            if (it != index_.end()) {
                row[it->second] += 1.0; // unknown terms are ignored
            }
        }
        std::vector<std::pair<std::uint32_t, double>> packed(row.begin(), row.end());
        if (packed.empty()) {
            X.empty_rows.push_back(r);
        }
        X.rows.push_back(std::move(packed));
    }
    return X;
}

std::pair<FeatureMatrix, TfidfModel> tfidf_fit_transform(const std::vector<corpus::TextUnit>& texts,
                                                         const TfidfParams& params) {
    TfidfModel model = TfidfModel::fit(texts, params);
    return {model.transform(texts), std::move(model)};
}

} // namespace polis::baseline
