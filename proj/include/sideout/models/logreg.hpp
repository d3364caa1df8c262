// L2-regularized logistic regression trained by damped Newton iterations
// from a zero start. The objective/gradient pair is exposed separately so it
// can be checked against finite differences.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "sideout/models/model.hpp"

namespace sideout {

struct LogRegConfig {
    double l2 = 1e-2;
    int max_iter = 100;
    double tol = 1e-8;  // on the gradient max-norm
};

// theta = (w_0..w_{d-1}, bias). Mean negative log-likelihood plus
// (l2/2)*||w||^2; the bias is not regularized. Gradient written to grad_out
// (size d+1) when non-null.
inline double logreg_objective(const Dataset& data, std::span<const double> theta,
                               double l2, std::vector<double>* grad_out = nullptr) {
    const std::size_t n = data.rows(), d = data.cols();
    if (grad_out) grad_out->assign(d + 1, 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = data.row(i);
        double z = theta[d];
        for (std::size_t j = 0; j < d; ++j) z += theta[j] * xi[j];
        const double s = data.y[i] == 1 ? 1.0 : -1.0;
        const double m = s * z;
        // log(1 + exp(-m)), stable for both signs
        loss += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
        if (grad_out) {
            const double coef = -s * sigmoid(-m) / double(n);
            for (std::size_t j = 0; j < d; ++j) (*grad_out)[j] += coef * xi[j];
            (*grad_out)[d] += coef;
        }
    }
    loss /= double(n);
    for (std::size_t j = 0; j < d; ++j) {
        loss += 0.5 * l2 * theta[j] * theta[j];
        if (grad_out) (*grad_out)[j] += l2 * theta[j];
    }
    return loss;
}

inline TrainedModel train_logreg(const Dataset& train, const LogRegConfig& cfg = {}) {
    train.validate();
    if (!train.both_classes_present()) throw SingleClassData();
    if (cfg.l2 < 0) throw InvalidConfig("l2 must be >= 0");

    auto [std_data, standardizer] = standardize(train);
    const std::size_t n = std_data.rows(), d = std_data.cols();

    std::vector<double> theta(d + 1, 0.0);
    std::vector<double> grad;
    bool converged = false;

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double loss = logreg_objective(std_data, theta, cfg.l2, &grad);
        double gnorm = 0.0;
        for (double g : grad) gnorm = std::max(gnorm, std::abs(g));
        if (gnorm <= cfg.tol) {
            converged = true;
            break;
        }

        // Newton direction: H delta = -g with H = X' diag(p(1-p)) X / n + l2.
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d + 1, d + 1);
        for (std::size_t i = 0; i < n; ++i) {
            auto xi = std_data.row(i);
            double z = theta[d];
            for (std::size_t j = 0; j < d; ++j) z += theta[j] * xi[j];
            const double p = sigmoid(z);
            const double wgt = std::max(p * (1.0 - p), 1e-12) / double(n);
            for (std::size_t a = 0; a <= d; ++a) {
                const double xa = a < d ? xi[a] : 1.0;
                for (std::size_t b = a; b <= d; ++b) {
                    const double xb = b < d ? xi[b] : 1.0;
                    H(a, b) += wgt * xa * xb;
                }
            }
        }
        for (std::size_t j = 0; j < d; ++j) H(j, j) += cfg.l2;
        H = H.selfadjointView<Eigen::Upper>();

        Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(grad.data(), d + 1);
        Eigen::VectorXd delta = H.ldlt().solve(-g);
        if (!delta.allFinite()) delta = -g;  // fall back to plain gradient step

        // Backtracking line search (Armijo).
        const double slope = g.dot(delta);
        double step = 1.0;
        std::vector<double> trial(d + 1);
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t j = 0; j <= d; ++j) trial[j] = theta[j] + step * delta[j];
            if (logreg_objective(std_data, trial, cfg.l2) <= loss + 1e-4 * step * slope) break;
            step *= 0.5;
        }
        for (std::size_t j = 0; j <= d; ++j) theta[j] += step * delta[j];
    }

    TrainedModel model;
    model.kind = ModelKind::LogReg;
    model.standardizer = standardizer;
    model.feature_names = train.feature_names;
    model.fingerprint = dataset_fingerprint(train);
    model.hyperparams = {{"l2", cfg.l2}, {"max_iter", cfg.max_iter}, {"tol", cfg.tol}};
    LinearParams p;
    p.weights.assign(theta.begin(), theta.begin() + d);
    p.bias = theta[d];
    p.converged = converged;
    model.params = std::move(p);
    return model;
}

// (feature name, |weight|) on the standardized scale, descending; ties keep
// feature order.
inline std::vector<std::pair<std::string, double>> logreg_feature_importance(
    const TrainedModel& model) {
    if (model.kind != ModelKind::LogReg) {
        throw WrongModelKind("feature importance requires a logistic regression model");
    }
    const auto& p = std::get<LinearParams>(model.params);
    std::vector<std::size_t> idx(p.weights.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(p.weights[a]) > std::abs(p.weights[b]);
    });
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i : idx) {
        out.emplace_back(model.feature_names[i], std::abs(p.weights[i]));
    }
    return out;
}

}  // namespace sideout
