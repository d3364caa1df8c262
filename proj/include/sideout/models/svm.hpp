// Linear SVM trained by full-batch subgradient descent on the regularized
// hinge loss, with step halving whenever a step would increase the
// objective (so the per-epoch objective is non-increasing). Probabilities
// come from a sigmoid fitted to the training margins.
#pragma once

#include <span>
#include <vector>

#include "sideout/models/model.hpp"

namespace sideout {

struct SvmConfig {
    double c = 1.0;  // hinge weight relative to ||w||^2 regularization
    int epochs = 200;
    double lr0 = 0.5;
    std::uint64_t seed = 0;  // accepted for interface symmetry; training is
                             // full-batch and does not consume randomness
};

// J(w, b) = ||w||^2 / (2 c n) + mean hinge.
inline double svm_objective(const Dataset& data, std::span<const double> w, double b,
                            double c) {
    const std::size_t n = data.rows(), d = data.cols();
    double reg = 0.0;
    for (double v : w) reg += v * v;
    double loss = reg / (2.0 * c * double(n));
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = data.row(i);
        double m = b;
        for (std::size_t j = 0; j < d; ++j) m += w[j] * xi[j];
        const double s = data.y[i] == 1 ? 1.0 : -1.0;
        const double hinge = 1.0 - s * m;
        if (hinge > 0) loss += hinge / double(n);
    }
    return loss;
}

inline TrainedModel train_svm(const Dataset& train, const SvmConfig& cfg = {},
                              std::vector<double>* objective_trace = nullptr) {
    train.validate();
    if (!train.both_classes_present()) throw SingleClassData();
    if (!(cfg.c > 0)) throw InvalidConfig("svm c must be > 0");

    auto [std_data, standardizer] = standardize(train);
    const std::size_t n = std_data.rows(), d = std_data.cols();

    std::vector<double> w(d, 0.0);
    double b = 0.0;
    double obj = svm_objective(std_data, w, b, cfg.c);
    double lr = cfg.lr0;
    if (objective_trace) objective_trace->push_back(obj);

    std::vector<double> gw(d), trial_w(d);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::fill(gw.begin(), gw.end(), 0.0);
        double gb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto xi = std_data.row(i);
            double m = b;
            for (std::size_t j = 0; j < d; ++j) m += w[j] * xi[j];
            const double s = std_data.y[i] == 1 ? 1.0 : -1.0;
            if (s * m < 1.0) {
                for (std::size_t j = 0; j < d; ++j) gw[j] -= s * xi[j] / double(n);
                gb -= s / double(n);
            }
        }
        for (std::size_t j = 0; j < d; ++j) gw[j] += w[j] / (cfg.c * double(n));

        // Halve the step until it does not increase the objective.
        bool moved = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            for (std::size_t j = 0; j < d; ++j) trial_w[j] = w[j] - lr * gw[j];
            const double trial_b = b - lr * gb;
            const double trial_obj = svm_objective(std_data, trial_w, trial_b, cfg.c);
            if (trial_obj <= obj) {
                w = trial_w;
                b = trial_b;
                obj = trial_obj;
                moved = true;
                break;
            }
            lr *= 0.5;
        }
        if (objective_trace) objective_trace->push_back(obj);
        if (!moved) break;  // step underflowed; we are at (numerical) rest
    }

    // Platt-style calibration: 1-D logistic regression of labels on margins.
    // A small ridge keeps the slope finite on separable data.
    std::vector<double> margins(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = std_data.row(i);
        double m = b;
        for (std::size_t j = 0; j < d; ++j) m += w[j] * xi[j];
        margins[i] = m;
    }
    double a = 1.0, beta = 0.0;
    const double ridge = 1e-3;
    for (int iter = 0; iter < 100; ++iter) {
        double g_a = ridge * a, g_b = 0.0;
        double h_aa = ridge, h_ab = 0.0, h_bb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(a * margins[i] + beta);
            const double r = (p - (std_data.y[i] == 1 ? 1.0 : 0.0)) / double(n);
            const double wgt = std::max(p * (1.0 - p), 1e-12) / double(n);
            g_a += r * margins[i];
            g_b += r;
            h_aa += wgt * margins[i] * margins[i];
            h_ab += wgt * margins[i];
            h_bb += wgt;
        }
        const double det = h_aa * h_bb - h_ab * h_ab;
        if (std::abs(det) < 1e-300) break;
        const double da = (-g_a * h_bb + g_b * h_ab) / det;
        const double db = (-h_aa * g_b + h_ab * g_a) / det;
        a += da;
        beta += db;
        if (std::abs(da) + std::abs(db) < 1e-12) break;
    }

    TrainedModel model;
    model.kind = ModelKind::LinearSvm;
    model.standardizer = standardizer;
    model.feature_names = train.feature_names;
    model.fingerprint = dataset_fingerprint(train);
    model.hyperparams = {{"c", cfg.c}, {"epochs", cfg.epochs}, {"lr0", cfg.lr0},
                         {"seed", cfg.seed}};
    SvmParams p;
    p.weights = w;
    p.bias = b;
    p.platt_a = a;
    p.platt_b = beta;
    model.params = std::move(p);
    return model;
}

}  // namespace sideout
