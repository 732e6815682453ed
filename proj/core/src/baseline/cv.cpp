#include "polis/baseline/cv.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "polis/metrics/metrics.hpp"
#include "polis/util/errors.hpp"
#include "polis/util/hash.hpp"

namespace polis::baseline {

namespace {

// Binary macro F1 through the party-pair implementation (the formula is
// symmetric in the class encoding).
double macro_f1_binary(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::pair<corpus::Party, corpus::Party>> mapped;
    mapped.reserve(pairs.size());
    for (const auto& [truth, pred] : pairs) {
        mapped.emplace_back(truth == 1 ? corpus::Party::Republican : corpus::Party::Democratic,
                            pred == 1 ? corpus::Party::Republican : corpus::Party::Democratic);
    }
    return metrics::macro_f1(mapped);
}

FeatureMatrix embed_features(const std::vector<corpus::TextUnit>& texts,
                             backend::EmbeddingProvider& provider) {
    FeatureMatrix X;
    X.n_cols = provider.dim();
    X.rows.reserve(texts.size());
    for (const auto& t : texts) {
        auto v = provider.embed(t.body);
        std::vector<std::pair<std::uint32_t, double>> row;
        row.reserve(v.values.size());
        for (std::size_t i = 0; i < v.values.size(); ++i) {
            row.emplace_back(static_cast<std::uint32_t>(i), v.values[i]);
        }
        X.rows.push_back(std::move(row));
    }
    return X;
}

std::unique_ptr<BinaryClassifier> train_classifier(const ModelSpec& spec,
                                                   const TfidfModel* tfidf,
                                                   const std::vector<corpus::TextUnit>& texts,
                                                   const std::vector<int>& labels) {
    switch (spec.classifier) {
    case ModelSpec::Classifier::multinomial_nb: {
        if (spec.representation != ModelSpec::Representation::tfidf) {
            throw ValidationError("multinomial_nb needs count features");
        }
        FeatureMatrix counts = tfidf->transform_counts(texts);
        return std::make_unique<MultinomialNb>(MultinomialNb::train(counts, labels, spec.nb_alpha));
    }
    case ModelSpec::Classifier::logistic: {
        FeatureMatrix X = spec.representation == ModelSpec::Representation::tfidf
                              ? tfidf->transform(texts)
                              : embed_features(texts, *spec.embedder);
        return std::make_unique<LogisticModel>(LogisticModel::train(X, labels, spec.logistic));
    }
    case ModelSpec::Classifier::gaussian_nb: {
        if (spec.representation != ModelSpec::Representation::embedding) {
            throw ValidationError("gaussian_nb runs on embedding features");
        }
        FeatureMatrix X = embed_features(texts, *spec.embedder);
        return std::make_unique<GaussianNb>(GaussianNb::train(X, labels));
    }
    }
    throw ValidationError("unknown classifier");
}

FeatureMatrix predict_features(const ModelSpec& spec, const TfidfModel* tfidf,
                               const std::vector<corpus::TextUnit>& texts) {
    if (spec.classifier == ModelSpec::Classifier::multinomial_nb) {
        return tfidf->transform_counts(texts);
    }
    if (spec.representation == ModelSpec::Representation::tfidf) {
        return tfidf->transform(texts);
    }
    return embed_features(texts, *spec.embedder);
}

} // namespace

FoldSplit FoldSplit::make(const std::vector<int>& labels, std::size_t k, std::uint64_t seed,
                          const std::vector<std::string>* group_ids) {
    if (k < 2) {
        throw ValidationError("FoldSplit: k must be >= 2");
    }
    FoldSplit split;
    split.k = k;
    split.seed = seed;
    split.grouped = group_ids != nullptr;
    split.assignments.assign(labels.size(), 0);

    if (!group_ids) {
        std::map<int, std::vector<std::size_t>> strata;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            strata[labels[i]].push_back(i);
        }
        for (auto& [label, docs] : strata) {
            std::mt19937_64 rng(util::derive_seed(seed, "fold/" + std::to_string(label)));
            std::shuffle(docs.begin(), docs.end(), rng);
            for (std::size_t j = 0; j < docs.size(); ++j) {
                split.assignments[docs[j]] = j % k;
            }
        }
        return split;
    }

    if (group_ids->size() != labels.size()) {
        throw ValidationError("FoldSplit: group id count mismatch");
    }
    // Whole groups are dealt into folds, stratified by the group's label.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        groups[(*group_ids)[i]].push_back(i);
    }
    std::map<int, std::vector<std::string>> strata;
    for (const auto& [group, docs] : groups) {
        strata[labels[docs.front()]].push_back(group);
    }
    for (auto& [label, names] : strata) {
        std::mt19937_64 rng(util::derive_seed(seed, "gfold/" + std::to_string(label)));
        std::shuffle(names.begin(), names.end(), rng);
        for (std::size_t j = 0; j < names.size(); ++j) {
            for (std::size_t doc : groups[names[j]]) {
                split.assignments[doc] = j % k;
            }
        }
    }
    return split;
}

std::string ModelSpec::name() const {
    std::string rep = representation == Representation::tfidf ? "tfidf" : "sbert-like";
    switch (classifier) {
    case Classifier::multinomial_nb:
        return rep + "+nb";
    case Classifier::logistic:
        return rep + "+logit";
    case Classifier::gaussian_nb:
        return rep + "+gnb";
    }
    return rep;
}

CvResult cross_validate(const ModelSpec& spec, const std::vector<corpus::TextUnit>& texts,
                        const std::vector<int>& labels, const FoldSplit& split) {
    if (texts.size() != labels.size() || texts.size() != split.assignments.size()) {
        throw ValidationError("cross_validate: size mismatch");
    }
    if (spec.representation == ModelSpec::Representation::embedding && !spec.embedder) {
        throw ValidationError("cross_validate: embedding representation without a provider");
    }
    CvResult result;
    for (std::size_t fold = 0; fold < split.k; ++fold) {
        std::vector<corpus::TextUnit> train_texts, test_texts;
        std::vector<int> train_y, test_y;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            if (split.assignments[i] == fold) {
                test_texts.push_back(texts[i]);
                test_y.push_back(labels[i]);
            } else {
                train_texts.push_back(texts[i]);
                train_y.push_back(labels[i]);
            }
        }
        auto has_both = [](const std::vector<int>& ys) {
            bool h0 = false, h1 = false;
            for (int y : ys) {
                (y == 1 ? h1 : h0) = true;
            }
            return h0 && h1;
        };
        if (test_texts.empty() || !has_both(train_y) || !has_both(test_y)) {
            result.skipped_folds.push_back(fold);
            continue;
        }
        // Features are fitted on the training folds only.
        std::optional<TfidfModel> tfidf;
        if (spec.representation == ModelSpec::Representation::tfidf ||
            spec.classifier == ModelSpec::Classifier::multinomial_nb) {
            tfidf = TfidfModel::fit(train_texts);
        }
        auto model = train_classifier(spec, tfidf ? &*tfidf : nullptr, train_texts, train_y);
        FeatureMatrix X_test = predict_features(spec, tfidf ? &*tfidf : nullptr, test_texts);
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(test_y.size());
        auto preds = model->predict_all(X_test);
        for (std::size_t i = 0; i < test_y.size(); ++i) {
            pairs.emplace_back(test_y[i], preds[i]);
        }
        result.fold_f1.push_back(macro_f1_binary(pairs));
    }
    if (!result.fold_f1.empty()) {
        double sum = 0.0;
        for (double f : result.fold_f1) {
            sum += f;
        }
        result.mean = sum / static_cast<double>(result.fold_f1.size());
        double sq = 0.0;
        for (double f : result.fold_f1) {
            sq += (f - result.mean) * (f - result.mean);
        }
        result.sd = result.fold_f1.size() > 1
                        ? std::sqrt(sq / static_cast<double>(result.fold_f1.size() - 1))
                        : 0.0;
    }
    return result;
}

int ContentClassifier::predict(const corpus::TextUnit& text) const {
    std::vector<corpus::TextUnit> one = {text};
    FeatureMatrix X = predict_features(spec, tfidf ? &*tfidf : nullptr, one);
    return model->predict(X.rows.front());
}

ContentClassifier train_political_content_classifier(const std::vector<corpus::TextUnit>& texts,
                                                     const ModelSpec& spec, std::uint64_t seed) {
    std::vector<int> labels;
    labels.reserve(texts.size());
    for (const auto& t : texts) {
        labels.push_back(t.category.is_political() ? 1 : 0);
    }
    bool has_pol = std::count(labels.begin(), labels.end(), 1) > 0;
    bool has_gen = std::count(labels.begin(), labels.end(), 0) > 0;
    if (!has_pol || !has_gen) {
        throw ValidationError("political content classifier needs both political and general "
                              "training texts");
    }
    // Stratified 80/20 development split for the held-out score.
    FoldSplit split = FoldSplit::make(labels, 5, seed);
    std::vector<corpus::TextUnit> train_texts, dev_texts;
    std::vector<int> train_y, dev_y;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (split.assignments[i] == 0) {
            dev_texts.push_back(texts[i]);
            dev_y.push_back(labels[i]);
        } else {
            train_texts.push_back(texts[i]);
            train_y.push_back(labels[i]);
        }
    }
    ContentClassifier classifier;
    classifier.spec = spec;
    if (spec.representation == ModelSpec::Representation::tfidf ||
        spec.classifier == ModelSpec::Classifier::multinomial_nb) {
        classifier.tfidf = TfidfModel::fit(train_texts);
    }
    classifier.model = train_classifier(spec, classifier.tfidf ? &*classifier.tfidf : nullptr,
                                        train_texts, train_y);
    if (!dev_texts.empty()) {
        FeatureMatrix X_dev =
            predict_features(spec, classifier.tfidf ? &*classifier.tfidf : nullptr, dev_texts);
        auto preds = classifier.model->predict_all(X_dev);
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i < dev_y.size(); ++i) {
            pairs.emplace_back(dev_y[i], preds[i]);
        }
        classifier.heldout_macro_f1 = macro_f1_binary(pairs);
    }
    return classifier;
}

SensitivitySplit sensitivity_filter(const std::vector<corpus::TextUnit>& general_texts,
                                    const ContentClassifier& classifier) {
    SensitivitySplit split;
    for (const auto& text : general_texts) {
        if (classifier.predict(text) == 1) {
            split.removed.push_back(text);
        } else {
            split.retained.push_back(text);
        }
    }
    return split;
}

} // namespace polis::baseline
