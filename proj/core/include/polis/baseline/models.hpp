#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "polis/baseline/features.hpp"

namespace polis::baseline {

/// Binary classifier over sparse rows; labels are 0/1.
class BinaryClassifier {
public:
    virtual ~BinaryClassifier() = default;
    virtual int predict(const std::vector<std::pair<std::uint32_t, double>>& row) const = 0;
    virtual std::string kind() const = 0;
    virtual void save(const std::filesystem::path& path) const = 0;

    std::vector<int> predict_all(const FeatureMatrix& X) const;

    /// Reads back any classifier written by save(); the embedded JSON
    /// header names the concrete type.
    static std::unique_ptr<BinaryClassifier> load(const std::filesystem::path& path);
};

/// Laplace-smoothed multinomial Naive Bayes over raw counts.
class MultinomialNb : public BinaryClassifier {
public:
    static MultinomialNb train(const FeatureMatrix& X_counts, const std::vector<int>& y,
                               double alpha = 1.0);

    int predict(const std::vector<std::pair<std::uint32_t, double>>& row) const override;
    std::string kind() const override { return "multinomial_nb"; }
    void save(const std::filesystem::path& path) const override;

    double alpha = 1.0;
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> log_cond; // per class, per term
};

struct LogisticOptions {
    double l2 = 1.0; // unaveraged ridge weight: loss = sum_i(...) + l2/2 * |w|^2
    int max_iter = 500;
    double tol = 1e-6; // sup-norm of the averaged gradient
};

/// L2-regularized logistic regression fit by full-batch gradient descent
/// with backtracking line search. Non-convergence is reported via the
/// flag, not an error.
class LogisticModel : public BinaryClassifier {
public:
    static LogisticModel train(const FeatureMatrix& X, const std::vector<int>& y,
                               const LogisticOptions& options = {});

    int predict(const std::vector<std::pair<std::uint32_t, double>>& row) const override;
    double decision_value(const std::vector<std::pair<std::uint32_t, double>>& row) const;
    std::string kind() const override { return "logistic"; }
    void save(const std::filesystem::path& path) const override;

    std::vector<double> weights;
    double bias = 0.0;
    bool converged = false;
    int iterations = 0;
    LogisticOptions options;
};

/// Averaged objective and gradient of the logistic fit at (w, b); exposed
/// so tests can check the analytic gradient against finite differences.
struct LogisticGradient {
    double loss = 0.0;
    std::vector<double> grad_w;
    double grad_b = 0.0;
};
LogisticGradient logistic_loss_grad(const FeatureMatrix& X, const std::vector<int>& y,
                                    const std::vector<double>& w, double b, double l2);

/// Gaussian Naive Bayes for dense embedding features.
class GaussianNb : public BinaryClassifier {
public:
    static GaussianNb train(const FeatureMatrix& X, const std::vector<int>& y);

    int predict(const std::vector<std::pair<std::uint32_t, double>>& row) const override;
    std::string kind() const override { return "gaussian_nb"; }
    void save(const std::filesystem::path& path) const override;

    std::size_t n_dims = 0;
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> mean;
    std::array<std::vector<double>, 2> variance;
};

} // namespace polis::baseline
