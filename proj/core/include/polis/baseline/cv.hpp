#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polis/backend/embed.hpp"
#include "polis/baseline/features.hpp"
#include "polis/baseline/models.hpp"
#include "polis/corpus/types.hpp"

namespace polis::baseline {

struct FoldSplit {
    std::size_t k = 5;
    std::vector<std::size_t> assignments; // doc index -> fold
    std::uint64_t seed = 0;
    bool grouped = false;

    /// Stratified assignment: documents of each label are shuffled with
    /// the seed and dealt round-robin. With group ids, whole groups are
    /// dealt instead, so no group spans folds.
    static FoldSplit make(const std::vector<int>& labels, std::size_t k, std::uint64_t seed,
                          const std::vector<std::string>* group_ids = nullptr);
};

struct ModelSpec {
    enum class Representation { tfidf, embedding };
    enum class Classifier { multinomial_nb, logistic, gaussian_nb };

    Representation representation = Representation::tfidf;
    Classifier classifier = Classifier::multinomial_nb;
    double nb_alpha = 1.0;
    LogisticOptions logistic;
    backend::EmbeddingProvider* embedder = nullptr; // required for embedding features

    std::string name() const;
};

struct CvResult {
    std::vector<double> fold_f1;    // scored folds only
    std::vector<std::size_t> skipped_folds; // folds missing a class
    double mean = 0.0;
    double sd = 0.0;
};

/// k-fold cross-validation with features fitted on training folds only.
/// A fold whose train or test side is missing a class is flagged and
/// excluded from the mean.
CvResult cross_validate(const ModelSpec& spec, const std::vector<corpus::TextUnit>& texts,
                        const std::vector<int>& labels, const FoldSplit& split);

/// Trained binary Politics-vs-general content classifier plus the feature
/// transform it needs at prediction time.
struct ContentClassifier {
    ModelSpec spec;
    std::optional<TfidfModel> tfidf;
    std::unique_ptr<BinaryClassifier> model;
    double heldout_macro_f1 = 0.0;

    /// 1 = political.
    int predict(const corpus::TextUnit& text) const;
};

/// Trains on text units labeled by their category (Politics = positive),
/// holding out a stratified 20% to report macro F1. The caller is
/// responsible for passing only the designated development half of users.
ContentClassifier train_political_content_classifier(const std::vector<corpus::TextUnit>& texts,
                                                     const ModelSpec& spec,
                                                     std::uint64_t seed = 0);

struct SensitivitySplit {
    std::vector<corpus::TextUnit> retained;
    std::vector<corpus::TextUnit> removed;
};

/// Partitions general-topic texts by the classifier's verdict; texts the
/// classifier flags as political are removed.
SensitivitySplit sensitivity_filter(const std::vector<corpus::TextUnit>& general_texts,
                                    const ContentClassifier& classifier);

} // namespace polis::baseline
