#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polis/corpus/types.hpp"

namespace polis::metrics {

using corpus::Party;

/// 2x2 confusion counts indexed (true, predicted); Republican = 0,
/// Democratic = 1.
struct ConfusionMatrix {
    std::array<std::array<std::size_t, 2>, 2> counts{{{0, 0}, {0, 0}}};

    void add(Party truth, Party pred);
    std::size_t total() const;
    ConfusionMatrix& operator+=(const ConfusionMatrix& other);

    /// Unweighted mean of the two per-class F1 scores. A class with an
    /// empty F1 denominator (absent from truth and prediction) scores 0,
    /// which keeps the random-baseline-0.5 property on balanced data.
    double macro_f1() const;
};

double macro_f1(const std::vector<std::pair<Party, Party>>& pairs);

struct GroupScore {
    double f1 = 0.0;
    std::size_t n = 0;
    bool low_support = false;
};

/// Macro F1 per group key plus group size; groups smaller than
/// `min_support` carry a low-support flag.
std::map<std::string, GroupScore>
grouped_f1(const std::vector<std::tuple<std::string, Party, Party>>& items,
           std::size_t min_support = 10);

struct BootstrapResult {
    double statistic = 0.0;
    double se = 0.0;
    std::size_t n_replicates = 0;
    std::optional<double> p_value;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultBootstrapReplicates = 1000;

/// Basic bootstrap of the mean of per-unit scores: units are resampled
/// with replacement n_replicates times and se is the standard deviation of
/// the replicate means. Deterministic under a fixed seed.
BootstrapResult bootstrap_se(const std::vector<double>& unit_scores,
                             std::size_t n_replicates = kDefaultBootstrapReplicates,
                             std::uint64_t seed = 0);

/// General form: `statistic` receives the resampled unit indices.
BootstrapResult bootstrap_se(std::size_t n_units,
                             const std::function<double(const std::vector<std::size_t>&)>& statistic,
                             std::size_t n_replicates = kDefaultBootstrapReplicates,
                             std::uint64_t seed = 0);

/// Bootstrap paired comparison: users are resampled with replacement, each
/// replicate records the mean paired difference (b - a), and the reported
/// statistic is the mean of those replicate differences. p is the
/// two-sided normal tail of statistic / sd(replicates).
BootstrapResult bootstrap_paired_test(const std::vector<std::pair<double, double>>& pairs,
                                      std::size_t n_replicates = kDefaultBootstrapReplicates,
                                      std::uint64_t seed = 0);

/// Sample Pearson correlation plus the two-sided p-value from the
/// t-transform with n - 2 degrees of freedom.
std::pair<double, double> pearson_r(const std::vector<double>& x,
                                    const std::vector<double>& y);

/// Cohen's kappa with marginal-product chance agreement. Perfect agreement
/// with degenerate marginals (p_e = 1) is defined as 1.
double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Fleiss' kappa over an items x raters matrix; every item must have the
/// same rater count (>= 2).
double fleiss_kappa(const std::vector<std::vector<std::string>>& ratings);

/// Accuracy of per-item modal labels against truth; a tied item counts as
/// incorrect.
double majority_vote_accuracy(const std::vector<std::vector<std::string>>& ratings,
                              const std::vector<std::string>& truth);

} // namespace polis::metrics
