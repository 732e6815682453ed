#include "polis/metrics/metrics.hpp"

#include <cmath>
#include <random>

#include <boost/math/distributions/students_t.hpp>

#include "polis/util/errors.hpp"

namespace polis::metrics {

namespace {

std::size_t party_index(Party p) {
    return p == Party::Republican ? 0 : 1;
}

double class_f1(const ConfusionMatrix& m, std::size_t cls) {
    std::size_t other = 1 - cls;
    double tp = static_cast<double>(m.counts[cls][cls]);
    double fp = static_cast<double>(m.counts[other][cls]);
    double fn = static_cast<double>(m.counts[cls][other]);
    double denom = 2.0 * tp + fp + fn;
    if (denom == 0.0) {
        return 0.0;
    }
    return 2.0 * tp / denom;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) {
        s += x;
    }
    return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double sq = 0.0;
    for (double x : xs) {
        sq += (x - mean) * (x - mean);
    }
    return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

// Two-sided tail of the standard normal.
double normal_two_sided_p(double t) {
    return std::erfc(std::abs(t) / std::sqrt(2.0));
}

} // namespace

void ConfusionMatrix::add(Party truth, Party pred) {
    ++counts[party_index(truth)][party_index(pred)];
}

std::size_t ConfusionMatrix::total() const {
    return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            counts[i][j] += other.counts[i][j];
        }
    }
    return *this;
}

double ConfusionMatrix::macro_f1() const {
    return 0.5 * (class_f1(*this, 0) + class_f1(*this, 1));
}

double macro_f1(const std::vector<std::pair<Party, Party>>& pairs) {
    if (pairs.empty()) {
        throw ValidationError("macro_f1: empty input");
    }
    ConfusionMatrix m;
    for (const auto& [truth, pred] : pairs) {
        m.add(truth, pred);
    }
    return m.macro_f1();
}

std::map<std::string, GroupScore>
grouped_f1(const std::vector<std::tuple<std::string, Party, Party>>& items,
           std::size_t min_support) {
    std::map<std::string, ConfusionMatrix> by_group;
    for (const auto& [group, truth, pred] : items) {
        by_group[group].add(truth, pred);
    }
    std::map<std::string, GroupScore> scores;
    for (const auto& [group, m] : by_group) {
        GroupScore s;
        s.f1 = m.macro_f1();
        s.n = m.total();
        s.low_support = s.n < min_support;
        scores[group] = s;
    }
    return scores;
}

BootstrapResult bootstrap_se(const std::vector<double>& unit_scores,
                             std::size_t n_replicates, std::uint64_t seed) {
    return bootstrap_se(
        unit_scores.size(),
        [&](const std::vector<std::size_t>& idx) {
            double s = 0.0;
            for (std::size_t i : idx) {
                s += unit_scores[i];
            }
            return s / static_cast<double>(idx.size());
        },
        n_replicates, seed);
}

BootstrapResult bootstrap_se(std::size_t n_units,
                             const std::function<double(const std::vector<std::size_t>&)>& statistic,
                             std::size_t n_replicates, std::uint64_t seed) {
    if (n_units < 2) {
        throw ValidationError("bootstrap_se: need at least 2 units");
    }
    if (n_replicates < 1) {
        throw ValidationError("bootstrap_se: need at least 1 replicate");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n_units - 1);
    std::vector<double> replicates;
    replicates.reserve(n_replicates);
    std::vector<std::size_t> idx(n_units);
    for (std::size_t b = 0; b < n_replicates; ++b) {
        for (auto& i : idx) {
            i = pick(rng);
        }
        replicates.push_back(statistic(idx));
    }
    BootstrapResult r;
    r.statistic = mean_of(replicates);
    r.se = sample_sd(replicates, r.statistic);
    r.n_replicates = n_replicates;
    r.seed = seed;
    return r;
}

BootstrapResult bootstrap_paired_test(const std::vector<std::pair<double, double>>& pairs,
                                      std::size_t n_replicates, std::uint64_t seed) {
    if (pairs.size() < 2) {
        throw ValidationError("bootstrap_paired_test: need at least 2 users");
    }
    std::vector<double> diffs;
    diffs.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        diffs.push_back(b - a);
    }
    BootstrapResult r = bootstrap_se(diffs, n_replicates, seed);
    if (r.se == 0.0) {
        r.p_value = (r.statistic == 0.0) ? 1.0 : 0.0;
    } else {
        r.p_value = normal_two_sided_p(r.statistic / r.se);
    }
    return r;
}

std::pair<double, double> pearson_r(const std::vector<double>& x,
                                    const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw ValidationError("pearson_r: length mismatch");
    }
    std::size_t n = x.size();
    if (n < 3) {
        throw ValidationError("pearson_r: need at least 3 points");
    }
    double mx = mean_of(x);
    double my = mean_of(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ValidationError("pearson_r: zero variance");
    }
    double r = sxy / std::sqrt(sxx * syy);
    // Guard the t-transform against |r| rounding slightly past 1.
    double r_clamped = std::min(1.0, std::max(-1.0, r));
    double df = static_cast<double>(n - 2);
    double p;
    if (std::abs(r_clamped) >= 1.0) {
        p = 0.0;
    } else {
        double t = r_clamped * std::sqrt(df / (1.0 - r_clamped * r_clamped));
        boost::math::students_t dist(df);
        p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    }
    return {r, p};
}

double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw ValidationError("cohen_kappa: inputs must be equal-length and non-empty");
    }
    std::size_t n = a.size();
    std::map<std::string, double> pa, pb;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        pa[a[i]] += 1.0;
        pb[b[i]] += 1.0;
        if (a[i] == b[i]) {
            ++agree;
        }
    }
    double po = static_cast<double>(agree) / static_cast<double>(n);
    double pe = 0.0;
    for (const auto& [label, ca] : pa) {
        auto it = pb.find(label);
        if (it != pb.end()) {
            pe += (ca / n) * (it->second / n);
        }
    }
    if (pe == 1.0) {
        return po == 1.0 ? 1.0 : 0.0;
    }
    return (po - pe) / (1.0 - pe);
}

double fleiss_kappa(const std::vector<std::vector<std::string>>& ratings) {
    if (ratings.empty()) {
        throw ValidationError("fleiss_kappa: no items");
    }
    std::size_t n_raters = ratings.front().size();
    if (n_raters < 2) {
        throw ValidationError("fleiss_kappa: need at least 2 raters");
    }
    std::map<std::string, double> category_mass;
    double sum_pi = 0.0;
    for (const auto& item : ratings) {
        if (item.size() != n_raters) {
            throw ValidationError("fleiss_kappa: ragged rating matrix");
        }
        std::map<std::string, std::size_t> counts;
        for (const auto& label : item) {
            ++counts[label];
        }
        double sum_sq = 0.0;
        for (const auto& [label, c] : counts) {
            sum_sq += static_cast<double>(c) * static_cast<double>(c);
            category_mass[label] += static_cast<double>(c);
        }
        double n = static_cast<double>(n_raters);
        sum_pi += (sum_sq - n) / (n * (n - 1.0));
    }
    double n_items = static_cast<double>(ratings.size());
    double p_bar = sum_pi / n_items;
    double total = n_items * static_cast<double>(n_raters);
    double pe = 0.0;
    for (const auto& [label, mass] : category_mass) {
        double pj = mass / total;
        pe += pj * pj;
    }
    if (pe == 1.0) {
        return p_bar == 1.0 ? 1.0 : 0.0;
    }
    return (p_bar - pe) / (1.0 - pe);
}

double majority_vote_accuracy(const std::vector<std::vector<std::string>>& ratings,
                              const std::vector<std::string>& truth) {
    if (ratings.size() != truth.size()) {
        throw ValidationError("majority_vote_accuracy: item/truth length mismatch");
    }
    if (ratings.empty()) {
        return 0.0;
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ratings.size(); ++i) {
        std::map<std::string, std::size_t> counts;
        for (const auto& label : ratings[i]) {
            ++counts[label];
        }
        std::string winner;
        std::size_t best = 0;
        bool tied = false;
        for (const auto& [label, c] : counts) {
            if (c > best) {
                best = c;
                winner = label;
                tied = false;
            } else if (c == best) {
                tied = true;
            }
        }
        if (!tied && winner == truth[i]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(ratings.size());
}

} // namespace polis::metrics
