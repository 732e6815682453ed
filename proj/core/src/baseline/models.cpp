#include "polis/baseline/models.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "polis/util/errors.hpp"

namespace polis::baseline {

using nlohmann::json;

namespace {

constexpr char kMagic[] = "POLISMDL1\n";
constexpr double kPi = 3.14159265358979323846;

void require_both_classes(const std::vector<int>& y, const char* op) {
    bool has0 = false, has1 = false;
    for (int label : y) {
        if (label == 0) {
            has0 = true;
        } else if (label == 1) {
            has1 = true;
        } else {
            throw ValidationError(std::string(op) + ": labels must be 0 or 1");
        }
    }
    if (!has0 || !has1) {
        throw ValidationError(std::string(op) + ": a class is absent from training data");
    }
}

double softplus(double z) {
    // log(1 + exp(z)) without overflow.
    if (z > 0.0) {
        return z + std::log1p(std::exp(-z));
    }
    return std::log1p(std::exp(z));
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

void write_blob(const std::filesystem::path& path, const json& header,
                const std::vector<double>& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write model file " + path.string());
    }
    std::string head = header.dump();
    std::uint64_t head_len = head.size();
    out.write(kMagic, sizeof(kMagic) - 1);
    out.write(reinterpret_cast<const char*>(&head_len), sizeof(head_len));
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(double)));
}

std::pair<json, std::vector<double>> read_blob(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingArtifactError("cannot open model file " + path.string());
    }
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
        throw ValidationError("not a model file: " + path.string());
    }
    std::uint64_t head_len = 0;
    in.read(reinterpret_cast<char*>(&head_len), sizeof(head_len));
    std::string head(head_len, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head_len));
    json header = json::parse(head);
    std::vector<double> payload;
    double v;
    while (in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
        payload.push_back(v);
    }
    return {std::move(header), std::move(payload)};
}

} // namespace

std::vector<int> BinaryClassifier::predict_all(const FeatureMatrix& X) const {
    std::vector<int> out;
    out.reserve(X.rows.size());
    for (const auto& row : X.rows) {
        out.push_back(predict(row));
    }
    return out;
}

MultinomialNb MultinomialNb::train(const FeatureMatrix& X_counts, const std::vector<int>& y,
                                   double alpha) {
    if (X_counts.rows.size() != y.size() || y.empty()) {
        throw ValidationError("multinomial_nb: rows/labels mismatch");
    }
    require_both_classes(y, "multinomial_nb");
    MultinomialNb model;
    model.alpha = alpha;
    std::array<double, 2> class_docs{};
    std::array<double, 2> class_total{};
    std::array<std::vector<double>, 2> term_count;
    term_count[0].assign(X_counts.n_cols, 0.0);
    term_count[1].assign(X_counts.n_cols, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        int c = y[i];
        class_docs[c] += 1.0;
        for (const auto& [col, value] : X_counts.rows[i]) {
            if (value < 0.0) {
                throw ValidationError("multinomial_nb: negative feature value");
            }
            term_count[c][col] += value;
            class_total[c] += value;
        }
    }
    double n = static_cast<double>(y.size());
    double v = static_cast<double>(X_counts.n_cols);
    for (int c = 0; c < 2; ++c) {
        model.log_prior[c] = std::log(class_docs[c] / n);
        model.log_cond[c].resize(X_counts.n_cols);
        double denom = class_total[c] + alpha * v;
        for (std::size_t t = 0; t < X_counts.n_cols; ++t) {
            model.log_cond[c][t] = std::log((term_count[c][t] + alpha) / denom);
        }
    }
    return model;
}

int MultinomialNb::predict(const std::vector<std::pair<std::uint32_t, double>>& row) const {
    double s0 = log_prior[0];
    double s1 = log_prior[1];
    for (const auto& [col, value] : row) {
        if (col < log_cond[0].size()) {
            s0 += value * log_cond[0][col];
            s1 += value * log_cond[1][col];
        }
    }
    return s1 > s0 ? 1 : 0;
}

void MultinomialNb::save(const std::filesystem::path& path) const {
    json header = {{"kind", kind()},
                   {"alpha", alpha},
                   {"n_features", log_cond[0].size()},
                   {"formula", "log((count+alpha)/(total+alpha*V))"}};
    std::vector<double> payload;
    payload.push_back(log_prior[0]);
    payload.push_back(log_prior[1]);
    payload.insert(payload.end(), log_cond[0].begin(), log_cond[0].end());
    payload.insert(payload.end(), log_cond[1].begin(), log_cond[1].end());
    write_blob(path, header, payload);
}

LogisticGradient logistic_loss_grad(const FeatureMatrix& X, const std::vector<int>& y,
                                    const std::vector<double>& w, double b, double l2) {
    LogisticGradient g;
    g.grad_w.assign(w.size(), 0.0);
    double n = static_cast<double>(X.rows.size());
    for (std::size_t i = 0; i < X.rows.size(); ++i) {
        double f = b;
        for (const auto& [col, value] : X.rows[i]) {
            f += w[col] * value;
        }
        double ysign = y[i] == 1 ? 1.0 : -1.0;
        g.loss += softplus(-ysign * f);
        double coeff = -ysign * sigmoid(-ysign * f);
        for (const auto& [col, value] : X.rows[i]) {
            g.grad_w[col] += coeff * value;
        }
        g.grad_b += coeff;
    }
    g.loss /= n;
    g.grad_b /= n;
    double reg = 0.0;
    for (std::size_t t = 0; t < w.size(); ++t) {
        g.grad_w[t] = g.grad_w[t] / n + (l2 / n) * w[t];
        reg += w[t] * w[t];
    }
    g.loss += (l2 / (2.0 * n)) * reg;
    return g;
}

LogisticModel LogisticModel::train(const FeatureMatrix& X, const std::vector<int>& y,
                                   const LogisticOptions& options) {
    if (X.rows.size() != y.size() || y.empty()) {
        throw ValidationError("logistic: rows/labels mismatch");
    }
    require_both_classes(y, "logistic");
    LogisticModel model;
    model.options = options;
    model.weights.assign(X.n_cols, 0.0);
    model.bias = 0.0;

    LogisticGradient g = logistic_loss_grad(X, y, model.weights, model.bias, options.l2);
    double step = 1.0;
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        double gnorm = std::abs(g.grad_b);
        for (double gw : g.grad_w) {
            gnorm = std::max(gnorm, std::abs(gw));
        }
        if (gnorm < options.tol) {
            model.converged = true;
            break;
        }
        double gsq = g.grad_b * g.grad_b;
        for (double gw : g.grad_w) {
            gsq += gw * gw;
        }
        // Backtracking line search with a warm-started step.
        step *= 2.0;
        std::vector<double> w_new(model.weights.size());
        double b_new;
        LogisticGradient g_new;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t t = 0; t < w_new.size(); ++t) {
                w_new[t] = model.weights[t] - step * g.grad_w[t];
            }
            b_new = model.bias - step * g.grad_b;
            g_new = logistic_loss_grad(X, y, w_new, b_new, options.l2);
            if (g_new.loss <= g.loss - 0.5 * step * gsq) {
                break;
            }
            step *= 0.5;
        }
        model.weights.swap(w_new);
        model.bias = b_new;
        g = std::move(g_new);
    }
    model.iterations = iter;
    return model;
}

double LogisticModel::decision_value(
    const std::vector<std::pair<std::uint32_t, double>>& row) const {
    double f = bias;
    for (const auto& [col, value] : row) {
        if (col < weights.size()) {
            f += weights[col] * value;
        }
    }
    return f;
}

int LogisticModel::predict(const std::vector<std::pair<std::uint32_t, double>>& row) const {
    return decision_value(row) > 0.0 ? 1 : 0;
}

void LogisticModel::save(const std::filesystem::path& path) const {
    json header = {{"kind", kind()},
                   {"l2", options.l2},
                   {"max_iter", options.max_iter},
                   {"tol", options.tol},
                   {"converged", converged},
                   {"iterations", iterations},
                   {"n_features", weights.size()},
                   {"formula", "sum log(1+exp(-y f)) + l2/2 |w|^2"}};
    std::vector<double> payload;
    payload.push_back(bias);
    payload.insert(payload.end(), weights.begin(), weights.end());
    write_blob(path, header, payload);
}

GaussianNb GaussianNb::train(const FeatureMatrix& X, const std::vector<int>& y) {
    if (X.rows.size() != y.size() || y.empty()) {
        throw ValidationError("gaussian_nb: rows/labels mismatch");
    }
    require_both_classes(y, "gaussian_nb");
    GaussianNb model;
    model.n_dims = X.n_cols;
    std::array<double, 2> class_docs{};
    for (int c = 0; c < 2; ++c) {
        model.mean[c].assign(X.n_cols, 0.0);
        model.variance[c].assign(X.n_cols, 0.0);
    }
    std::array<std::vector<double>, 2> dense_sum = {std::vector<double>(X.n_cols, 0.0),
                                                    std::vector<double>(X.n_cols, 0.0)};
    std::array<std::vector<double>, 2> dense_sq = {std::vector<double>(X.n_cols, 0.0),
                                                   std::vector<double>(X.n_cols, 0.0)};
    for (std::size_t i = 0; i < y.size(); ++i) {
        int c = y[i];
        class_docs[c] += 1.0;
        for (const auto& [col, value] : X.rows[i]) {
            dense_sum[c][col] += value;
            dense_sq[c][col] += value * value;
        }
    }
    double n = static_cast<double>(y.size());
    for (int c = 0; c < 2; ++c) {
        model.log_prior[c] = std::log(class_docs[c] / n);
        for (std::size_t t = 0; t < X.n_cols; ++t) {
            double mu = dense_sum[c][t] / class_docs[c];
            double var = dense_sq[c][t] / class_docs[c] - mu * mu;
            model.mean[c][t] = mu;
            model.variance[c][t] = std::max(var, 1e-9);
        }
    }
    return model;
}

int GaussianNb::predict(const std::vector<std::pair<std::uint32_t, double>>& row) const {
    std::vector<double> dense(n_dims, 0.0);
    for (const auto& [col, value] : row) {
        if (col < n_dims) {
            dense[col] = value;
        }
    }
    std::array<double, 2> score = {log_prior[0], log_prior[1]};
    for (int c = 0; c < 2; ++c) {
        for (std::size_t t = 0; t < n_dims; ++t) {
            double d = dense[t] - mean[c][t];
            score[c] -= 0.5 * (std::log(2.0 * kPi * variance[c][t]) + d * d / variance[c][t]);
        }
    }
    return score[1] > score[0] ? 1 : 0;
}

void GaussianNb::save(const std::filesystem::path& path) const {
    json header = {{"kind", kind()}, {"n_features", n_dims}};
    std::vector<double> payload;
    payload.push_back(log_prior[0]);
    payload.push_back(log_prior[1]);
    for (int c = 0; c < 2; ++c) {
        payload.insert(payload.end(), mean[c].begin(), mean[c].end());
    }
    for (int c = 0; c < 2; ++c) {
        payload.insert(payload.end(), variance[c].begin(), variance[c].end());
    }
    write_blob(path, header, payload);
}

std::unique_ptr<BinaryClassifier> BinaryClassifier::load(const std::filesystem::path& path) {
    auto [header, payload] = read_blob(path);
    std::string kind = header.value("kind", "");
    std::size_t n = header.value("n_features", std::size_t{0});
    if (kind == "multinomial_nb") {
        if (payload.size() != 2 + 2 * n) {
            throw ValidationError("corrupt multinomial_nb payload in " + path.string());
        }
        auto model = std::make_unique<MultinomialNb>();
        model->alpha = header.value("alpha", 1.0);
        model->log_prior = {payload[0], payload[1]};
        model->log_cond[0].assign(payload.begin() + 2, payload.begin() + 2 + n);
        model->log_cond[1].assign(payload.begin() + 2 + n, payload.end());
        return model;
    }
    if (kind == "logistic") {
        if (payload.size() != 1 + n) {
            throw ValidationError("corrupt logistic payload in " + path.string());
        }
        auto model = std::make_unique<LogisticModel>();
        model->options.l2 = header.value("l2", 1.0);
        model->options.max_iter = header.value("max_iter", 500);
        model->options.tol = header.value("tol", 1e-6);
        model->converged = header.value("converged", false);
        model->iterations = header.value("iterations", 0);
        model->bias = payload[0];
        model->weights.assign(payload.begin() + 1, payload.end());
        return model;
    }
    if (kind == "gaussian_nb") {
        if (payload.size() != 2 + 4 * n) {
            throw ValidationError("corrupt gaussian_nb payload in " + path.string());
        }
        auto model = std::make_unique<GaussianNb>();
        model->n_dims = n;
        model->log_prior = {payload[0], payload[1]};
        auto it = payload.begin() + 2;
        for (int c = 0; c < 2; ++c, it += n) {
            model->mean[c].assign(it, it + n);
        }
        for (int c = 0; c < 2; ++c, it += n) {
            model->variance[c].assign(it, it + n);
        }
        return model;
    }
    throw ValidationError("unknown model kind \"" + kind + "\" in " + path.string());
}

} // namespace polis::baseline
