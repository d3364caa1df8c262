// Independent reference implementations used as test oracles. These must
// stay brute-force and must not share code paths with the library.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

// Confusion-matrix metrics by direct counting.
struct Confusion {
    long tp = 0, fp = 0, tn = 0, fn = 0;
};

inline Confusion count_confusion(std::span<const int> preds, std::span<const int> labels) {
    Confusion c;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == 1 && labels[i] == 1) ++c.tp;
        if (preds[i] == 1 && labels[i] == 0) ++c.fp;
        if (preds[i] == 0 && labels[i] == 0) ++c.tn;
        if (preds[i] == 0 && labels[i] == 1) ++c.fn;
    }
    return c;
}

inline double accuracy(std::span<const int> preds, std::span<const int> labels) {
    const Confusion c = count_confusion(preds, labels);
    return double(c.tp + c.tn) / double(c.tp + c.tn + c.fp + c.fn);
}

inline double f1(std::span<const int> preds, std::span<const int> labels) {
    const Confusion c = count_confusion(preds, labels);
    if (c.tp == 0) return 0.0;
    const double precision = double(c.tp) / double(c.tp + c.fp);
    const double recall = double(c.tp) / double(c.tp + c.fn);
    return 2.0 * precision * recall / (precision + recall);
}

// AUC by enumerating every positive/negative pair, ties worth 1/2.
inline double auc_pairs(std::span<const double> scores, std::span<const int> labels) {
    double wins = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / double(pairs);
}

// Central finite differences of a scalar function.
inline std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::vector<double> theta,
    double h = 1e-5) {
    std::vector<double> g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double keep = theta[i];
        theta[i] = keep + h;
        const double up = f(theta);
        theta[i] = keep - h;
        const double down = f(theta);
        theta[i] = keep;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

// Scale-normalized gradient comparison: max |a-b| / max(scale of b, floor).
inline double gradient_relative_error(std::span<const double> analytic,
                                      std::span<const double> numeric) {
    double max_diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(analytic[i] - numeric[i]));
        scale = std::max(scale, std::abs(numeric[i]));
    }
    return max_diff / std::max(scale, 1e-8);
}

// Closed-form Shapley values of a linear scorer under the
// replace-by-background value function.
inline std::vector<double> linear_shap(std::span<const double> w, std::span<const double> x,
                                       const std::vector<std::vector<double>>& background) {
    std::vector<double> phi(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double mean_bg = 0.0;
        for (const auto& b : background) mean_bg += b[i];
        mean_bg /= double(background.size());
        phi[i] = w[i] * (x[i] - mean_bg);
    }
    return phi;
}

}  // namespace oracles
