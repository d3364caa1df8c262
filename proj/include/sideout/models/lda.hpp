// Linear discriminant analysis in closed form: class means, pooled
// within-class covariance with a trace-scaled ridge, and the induced
// logistic posterior.
#pragma once

#include <Eigen/Dense>

#include "sideout/models/model.hpp"

namespace sideout {

inline TrainedModel train_lda(const Dataset& train) {
    train.validate();
    if (!train.both_classes_present()) throw SingleClassData();

    auto [std_data, standardizer] = standardize(train);
    const std::size_t n = std_data.rows(), d = std_data.cols();

    Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(d), mu1 = Eigen::VectorXd::Zero(d);
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = std_data.row(i);
        Eigen::Map<const Eigen::VectorXd> v(xi.data(), d);
        if (std_data.y[i] == 1) {
            mu1 += v;
            ++n1;
        } else {
            mu0 += v;
            ++n0;
        }
    }
    mu0 /= double(n0);
    mu1 /= double(n1);

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = std_data.row(i);
        Eigen::Map<const Eigen::VectorXd> v(xi.data(), d);
        const Eigen::VectorXd c = v - (std_data.y[i] == 1 ? mu1 : mu0);
        cov += c * c.transpose();
    }
    cov /= double(std::max<std::size_t>(1, n - 2));

    // Ridge scaled to the covariance magnitude; floor covers the zero-trace
    // degenerate case (e.g. one sample per class).
    double ridge = 1e-6 * cov.trace() / double(d);
    if (!(ridge > 0)) ridge = 1e-6;
    cov += ridge * Eigen::MatrixXd::Identity(d, d);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    if (ldlt.info() != Eigen::Success) {
        throw SingularCovariance("pooled covariance not factorizable after ridge");
    }
    const Eigen::VectorXd w = ldlt.solve(mu1 - mu0);
    if (!w.allFinite()) {
        throw SingularCovariance("pooled covariance is singular after ridge");
    }
    const double bias =
        -0.5 * (mu1 + mu0).dot(w) + std::log(double(n1) / double(n0));

    TrainedModel model;
    model.kind = ModelKind::Lda;
    model.standardizer = standardizer;
    model.feature_names = train.feature_names;
    model.fingerprint = dataset_fingerprint(train);
    model.hyperparams = {{"ridge", ridge}};
    LinearParams p;
    p.weights.assign(w.data(), w.data() + d);
    p.bias = bias;
    model.params = std::move(p);
    return model;
}

}  // namespace sideout
