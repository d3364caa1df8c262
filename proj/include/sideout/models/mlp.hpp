// One-hidden-layer network: tanh hidden units, sigmoid output, mean
// cross-entropy, full-batch gradient descent. Weights start from a seeded
// uniform(-0.1, 0.1) draw, so training is reproducible bit for bit.
#pragma once

#include <span>
#include <vector>

#include "sideout/models/model.hpp"
#include "sideout/rng.hpp"

namespace sideout {

struct MlpConfig {
    int hidden = 8;
    double lr = 0.05;
    int epochs = 500;
    std::uint64_t seed = 0;
};

// Parameter layout: w1 (hidden*d), b1 (hidden), w2 (hidden), b2. Returns the
// mean cross-entropy; fills grad_out (same layout) when non-null.
inline double mlp_objective(const Dataset& data, std::span<const double> theta, int hidden,
                            std::vector<double>* grad_out = nullptr) {
    const std::size_t n = data.rows(), d = data.cols();
    const std::size_t off_b1 = hidden * d;
    const std::size_t off_w2 = off_b1 + hidden;
    const std::size_t off_b2 = off_w2 + hidden;
    if (grad_out) grad_out->assign(off_b2 + 1, 0.0);

    double loss = 0.0;
    std::vector<double> act(hidden);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = data.row(i);
        double z2 = theta[off_b2];
        for (int h = 0; h < hidden; ++h) {
            double z1 = theta[off_b1 + h];
            for (std::size_t j = 0; j < d; ++j) z1 += theta[h * d + j] * xi[j];
            act[h] = std::tanh(z1);
            z2 += theta[off_w2 + h] * act[h];
        }
        const double p = sigmoid(z2);
        const double y = data.y[i] == 1 ? 1.0 : 0.0;
        const double pc = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
        loss -= (y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc)) / double(n);

        if (grad_out) {
            const double dz2 = (p - y) / double(n);  // d loss / d z2
            (*grad_out)[off_b2] += dz2;
            for (int h = 0; h < hidden; ++h) {
                (*grad_out)[off_w2 + h] += dz2 * act[h];
                const double dz1 = dz2 * theta[off_w2 + h] * (1.0 - act[h] * act[h]);
                (*grad_out)[off_b1 + h] += dz1;
                for (std::size_t j = 0; j < d; ++j) {
                    (*grad_out)[h * d + j] += dz1 * xi[j];
                }
            }
        }
    }
    return loss;
}

inline TrainedModel train_mlp(const Dataset& train, const MlpConfig& cfg = {}) {
    train.validate();
    if (!train.both_classes_present()) throw SingleClassData();
    if (cfg.hidden < 1) throw InvalidConfig("mlp hidden units must be >= 1");

    auto [std_data, standardizer] = standardize(train);
    const std::size_t d = std_data.cols();
    const std::size_t n_params = std::size_t(cfg.hidden) * d + 2 * cfg.hidden + 1;

    Rng rng(cfg.seed);
    std::vector<double> theta(n_params);
    for (auto& v : theta) v = rng.next_uniform(-0.1, 0.1);

    std::vector<double> grad;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        mlp_objective(std_data, theta, cfg.hidden, &grad);
        for (std::size_t j = 0; j < n_params; ++j) theta[j] -= cfg.lr * grad[j];
    }

    TrainedModel model;
    model.kind = ModelKind::Mlp;
    model.standardizer = standardizer;
    model.feature_names = train.feature_names;
    model.fingerprint = dataset_fingerprint(train);
    model.hyperparams = {{"hidden", cfg.hidden}, {"lr", cfg.lr}, {"epochs", cfg.epochs},
                         {"seed", cfg.seed}};
    MlpParams p;
    p.hidden = cfg.hidden;
    p.w1.assign(theta.begin(), theta.begin() + cfg.hidden * d);
    p.b1.assign(theta.begin() + cfg.hidden * d, theta.begin() + cfg.hidden * d + cfg.hidden);
    p.w2.assign(theta.begin() + cfg.hidden * d + cfg.hidden, theta.end() - 1);
    p.b2 = theta.back();
    model.params = std::move(p);
    return model;
}

}  // namespace sideout
