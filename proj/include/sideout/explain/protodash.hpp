// Greedy prototype selection against a single target row. At each step the
// candidate with the largest gradient of l(w) = w'mu - 0.5 w'Kw joins the
// selected set, then the non-negative weights are re-fit by projected
// gradient. K is an RBF kernel on standardized rows.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sideout/errors.hpp"

namespace sideout {

struct PrototypeResult {
    std::string target_id;
    struct Entry {
        std::size_t candidate_index = 0;
        std::string match_id;
        double weight = 0.0;
        std::vector<double> similarity;  // per feature, in [0,1]
    };
    std::vector<Entry> prototypes;  // in selection order
};

struct ProtoSelection {
    std::vector<std::size_t> indices;  // selection order
    std::vector<double> weights;       // aligned with indices, all >= 0
    std::vector<double> objective;     // l(w*) after each greedy step
};

namespace detail {

inline double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

// min 0.5 w'Kw - mu'w subject to w >= 0, by projected gradient with step
// 1/L, L = max row sum of |K| (a diagonal-dominance bound on the largest
// eigenvalue).
inline void solve_nonneg_weights(const std::vector<std::vector<double>>& k,
                                 const std::vector<double>& mu, std::vector<double>& w) {
    const std::size_t n = mu.size();
    double l_bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(k[i][j]);
        l_bound = std::max(l_bound, row);
    }
    if (l_bound <= 0) l_bound = 1.0;
    const double step = 1.0 / l_bound;

    std::vector<double> grad(n);
    for (int iter = 0; iter < 10000; ++iter) {
        double pg_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double g = -mu[i];
            for (std::size_t j = 0; j < n; ++j) g += k[i][j] * w[j];
            grad[i] = g;
            const double pg = w[i] > 0 ? g : std::min(g, 0.0);
            pg_norm = std::max(pg_norm, std::abs(pg));
        }
        if (pg_norm <= 1e-8) break;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::max(0.0, w[i] - step * grad[i]);
        }
    }
}

}  // namespace detail

inline ProtoSelection protodash(std::span<const double> target,
                                const std::vector<std::vector<double>>& candidates,
                                int m, double gamma) {
    if (m < 1 || std::size_t(m) > candidates.size()) {
        throw InvalidM("m must be in [1, candidate count], got " + std::to_string(m));
    }
    if (!(gamma > 0)) throw InvalidGamma(gamma);

    const std::size_t n = candidates.size();
    std::vector<double> mu(n);
    for (std::size_t j = 0; j < n; ++j) {
        mu[j] = detail::rbf_kernel(candidates[j], target, gamma);
    }

    ProtoSelection sel;
    std::vector<bool> selected(n, false);
    std::vector<std::vector<double>> k;  // kernel among selected
    std::vector<double> w;

    for (int step = 0; step < m; ++step) {
        // Gradient of l at the current solution (zero weight on unselected).
        double best_grad = -std::numeric_limits<double>::infinity();
        std::size_t best_j = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (selected[j]) continue;
            double g = mu[j];
            for (std::size_t s = 0; s < sel.indices.size(); ++s) {
                g -= w[s] * detail::rbf_kernel(candidates[j], candidates[sel.indices[s]], gamma);
            }
            if (g > best_grad) {  // ties keep the lower candidate index
                best_grad = g;
                best_j = j;
            }
        }
        selected[best_j] = true;
        sel.indices.push_back(best_j);

        const std::size_t sz = sel.indices.size();
        k.resize(sz);
        for (auto& row : k) row.resize(sz);
        for (std::size_t a = 0; a < sz; ++a) {
            for (std::size_t b = a; b < sz; ++b) {
                const double v = detail::rbf_kernel(candidates[sel.indices[a]],
                                                    candidates[sel.indices[b]], gamma);
                k[a][b] = v;
                k[b][a] = v;
            }
        }
        std::vector<double> mu_sel(sz);
        for (std::size_t a = 0; a < sz; ++a) mu_sel[a] = mu[sel.indices[a]];

        w.push_back(0.0);  // warm start keeps the objective non-decreasing
        detail::solve_nonneg_weights(k, mu_sel, w);

        double obj = 0.0;
        for (std::size_t a = 0; a < sz; ++a) {
            obj += w[a] * mu_sel[a];
            for (std::size_t b = 0; b < sz; ++b) obj -= 0.5 * w[a] * k[a][b] * w[b];
        }
        sel.objective.push_back(obj);
    }
    sel.weights = w;
    return sel;
}

// sim_i = exp(-|p_i - t_i| / scale_i); a constant training column compares
// exactly (1 when equal, 0 otherwise).
inline std::vector<double> feature_similarity(std::span<const double> prototype,
                                              std::span<const double> target,
                                              std::span<const double> scale,
                                              std::span<const std::uint8_t> constant = {}) {
    std::vector<double> out(prototype.size());
    for (std::size_t i = 0; i < prototype.size(); ++i) {
        const double diff = std::abs(prototype[i] - target[i]);
        if (!constant.empty() && constant[i]) {
            out[i] = diff == 0.0 ? 1.0 : 0.0;
        } else {
            out[i] = std::exp(-diff / scale[i]);
        }
    }
    return out;
}

}  // namespace sideout
