#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "polis/corpus/types.hpp"

namespace polis::baseline {

/// Sparse document-term matrix; rows hold (column, value) pairs sorted by
/// column.
struct FeatureMatrix {
    std::size_t n_cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    std::vector<std::size_t> empty_rows; // flagged zero rows
};

struct TfidfParams {
    std::size_t min_df = 1;
    std::set<std::string> stopwords; // empty by default
};

/// Fitted vocabulary + smoothed idf table:
///   idf(t) = ln((1 + N) / (1 + df(t))) + 1
/// Rows are L2-normalized. transform() of unseen text keeps the fitted
/// vocabulary and ignores unknown terms.
class TfidfModel {
public:
    static TfidfModel fit(const std::vector<corpus::TextUnit>& texts,
                          const TfidfParams& params = {});

    FeatureMatrix transform(const std::vector<corpus::TextUnit>& texts) const;

    /// Raw term counts over the fitted vocabulary (multinomial NB input).
    FeatureMatrix transform_counts(const std::vector<corpus::TextUnit>& texts) const;

    const std::vector<std::string>& vocabulary() const { return vocab_; }
    const std::vector<double>& idf() const { return idf_; }

private:
    std::vector<std::string> vocab_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<double> idf_;
};

/// fit + transform on the same corpus.
std::pair<FeatureMatrix, TfidfModel> tfidf_fit_transform(const std::vector<corpus::TextUnit>& texts,
                                                         const TfidfParams& params = {});

} // namespace polis::baseline
