// Classification metrics (accuracy, F1, rank-based AUC-ROC), a faithfulness
// score for attributions, and report rendering.
#pragma once

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sideout/explain/shapley.hpp"
#include "sideout/models/model.hpp"

namespace sideout {

namespace detail {

inline void check_pred_label_sizes(std::size_t a, std::size_t b) {
    if (a != b) {
        throw LengthMismatch("predictions (" + std::to_string(a) + ") and labels (" +
                             std::to_string(b) + ") differ in length");
    }
    if (a == 0) throw EmptyInput("no predictions to score");
}

}  // namespace detail

inline double accuracy(std::span<const int> preds, std::span<const int> labels) {
    detail::check_pred_label_sizes(preds.size(), labels.size());
    std::size_t correct = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i] == labels[i];
    return double(correct) / double(preds.size());
}

inline double f1_score(std::span<const int> preds, std::span<const int> labels,
                       int positive_class = 1) {
    detail::check_pred_label_sizes(preds.size(), labels.size());
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const bool p = preds[i] == positive_class;
        const bool a = labels[i] == positive_class;
        tp += p && a;
        fp += p && !a;
        fn += !p && a;
    }
    if (2 * tp + fp + fn == 0) return 0.0;
    return 2.0 * double(tp) / double(2 * tp + fp + fn);
}

// Probability a random positive outscores a random negative, ties counted
// half (Mann-Whitney / mid-rank formulation).
inline double auc_roc(std::span<const double> scores, std::span<const int> labels) {
    detail::check_pred_label_sizes(scores.size(), labels.size());
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid = 0.5 * double(i + j) + 1.0;  // 1-based mid-rank
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }

    std::size_t n_pos = 0;
    double rank_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[k] == 1) {
            ++n_pos;
            rank_sum += rank[k];
        }
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClassLabels();
    const double u = rank_sum - double(n_pos) * double(n_pos + 1) / 2.0;
    return u / (double(n_pos) * double(n_neg));
}

struct FaithfulnessResult {
    double value = 0.0;  // Pearson correlation, in [-1, 1]
    bool degenerate = false;
};

// Correlation between attributions and the model-output drop when each
// feature is individually reset to its baseline value.
inline FaithfulnessResult faithfulness(const ModelFn& f, std::span<const double> x,
                                       std::span<const double> phi,
                                       std::span<const double> baseline) {
    if (phi.size() != x.size() || baseline.size() != x.size()) {
        throw LengthMismatch("faithfulness inputs disagree in length");
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw NonFiniteInput("non-finite input to faithfulness");
    }
    const std::size_t d = x.size();
    std::vector<double> perturbed(x.begin(), x.end());
    const double fx = f(perturbed);
    std::vector<double> drop(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double keep = perturbed[i];
        perturbed[i] = baseline[i];
        drop[i] = fx - f(perturbed);
        perturbed[i] = keep;
    }

    double mean_phi = 0.0, mean_drop = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        mean_phi += phi[i];
        mean_drop += drop[i];
    }
    mean_phi /= double(d);
    mean_drop /= double(d);
    double spp = 0.0, sdd = 0.0, spd = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double a = phi[i] - mean_phi;
        const double b = drop[i] - mean_drop;
        spp += a * a;
        sdd += b * b;
        spd += a * b;
    }
    if (spp <= 0.0 || sdd <= 0.0) return {0.0, true};
    return {spd / std::sqrt(spp * sdd), false};
}

struct MetricsReport {
    ModelKind kind = ModelKind::LogReg;
    double accuracy = 0.0;
    double f1 = 0.0;
    double auc_roc = 0.0;
    std::size_t n_test = 0;
};

inline MetricsReport evaluate_model(const TrainedModel& model, const Dataset& test,
                                    double threshold = 0.5) {
    test.validate();
    std::vector<double> scores(test.rows());
    std::vector<int> preds(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i) {
        scores[i] = model.predict_proba(test.row(i));
        preds[i] = scores[i] > threshold ? 1 : 0;
    }
    MetricsReport r;
    r.kind = model.kind;
    r.accuracy = accuracy(preds, test.y);
    r.f1 = f1_score(preds, test.y);
    r.auc_roc = auc_roc(scores, test.y);
    r.n_test = test.rows();
    return r;
}

inline double majority_baseline_accuracy(std::span<const int> labels) {
    if (labels.empty()) throw EmptyInput("no labels");
    std::size_t ones = 0;
    for (int y : labels) ones += y == 1;
    const double rate = double(ones) / double(labels.size());
    return std::max(rate, 1.0 - rate);
}

// Plain-text table (best accuracy first): Models | Type of Model | Accuracy
// | F1-Score | AUC-ROC.
inline std::string render_metrics_table(std::vector<MetricsReport> reports) {
    std::sort(reports.begin(), reports.end(), [](const MetricsReport& a, const MetricsReport& b) {
        if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
        return std::string(display_name(a.kind)) < display_name(b.kind);
    });
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %-14s %-10s %-10s %-10s\n", "Models",
                  "Type of Model", "Accuracy", "F1-Score", "AUC-ROC");
    out += line;
    out += std::string(74, '-') + "\n";
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%-28s %-14s %-10.4f %-10.4f %-10.4f\n",
                      display_name(r.kind), model_type(r.kind), r.accuracy, r.f1, r.auc_roc);
        out += line;
    }
    return out;
}

inline nlohmann::json metrics_to_json(const std::vector<MetricsReport>& reports) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"model", to_string(r.kind)},
                       {"display_name", display_name(r.kind)},
                       {"type", model_type(r.kind)},
                       {"accuracy", r.accuracy},
                       {"f1_score", r.f1},
                       {"auc_roc", r.auc_roc},
                       {"n_test", r.n_test}});
    }
    return arr;
}

}  // namespace sideout
