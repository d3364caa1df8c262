// Kernel SHAP: weighted least squares over sampled feature coalitions, with
// the additivity constraint sum(phi) = f(x) - base enforced exactly by
// eliminating one unknown. When the coalition budget covers the full 2^M
// space the sampler switches to exact enumeration with analytic kernel
// weights, which reproduces exact Shapley values.
#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "sideout/explain/shapley.hpp"
#include "sideout/rng.hpp"

namespace sideout {

namespace detail {

inline double kernel_weight(int m, int size) {
    // (m-1) / (C(m,k) * k * (m-k))
    double comb = 1.0;
    for (int i = 1; i <= size; ++i) comb *= double(m - i + 1) / double(i);
    return double(m - 1) / (comb * double(size) * double(m - size));
}

inline double coalition_value(const ModelFn& f, std::span<const double> x,
                              const std::vector<std::vector<double>>& background,
                              std::uint64_t mask) {
    const int m = int(x.size());
    std::vector<double> row(m);
    double acc = 0.0;
    for (const auto& b : background) {
        for (int i = 0; i < m; ++i) row[i] = (mask >> i) & 1 ? x[i] : b[i];
        acc += f(row);
    }
    return acc / double(background.size());
}

// mask -> aggregated regression weight
using CoalitionWeights = std::map<std::uint64_t, double>;

inline CoalitionWeights sample_coalitions(int m, int n_samples, Rng& rng) {
    // Size distribution proportional to (m-1)/(k(m-k)), i.e. the kernel
    // weight summed over all coalitions of that size; duplicates then simply
    // accumulate counts.
    std::vector<double> size_weight(m);  // index k = 1..m-1
    double total = 0.0;
    for (int k = 1; k <= m - 1; ++k) {
        size_weight[k - 1] = 1.0 / (double(k) * double(m - k));
        total += size_weight[k - 1];
    }
    CoalitionWeights out;
    std::vector<int> idx(m);
    for (int s = 0; s < n_samples; ++s) {
        double u = rng.next_double() * total;
        int k = 1;
        for (; k < m - 1; ++k) {
            if (u < size_weight[k - 1]) break;
            u -= size_weight[k - 1];
        }
        for (int i = 0; i < m; ++i) idx[i] = i;
        std::uint64_t mask = 0;
        for (int pick = 0; pick < k; ++pick) {  // partial Fisher-Yates
            const std::size_t j = pick + rng.next_below(m - pick);
            std::swap(idx[pick], idx[j]);
            mask |= std::uint64_t(1) << idx[pick];
        }
        out[mask] += 1.0;
    }
    return out;
}

inline CoalitionWeights enumerate_coalitions(int m) {
    CoalitionWeights out;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << m); ++mask) {
        out[mask] = kernel_weight(m, __builtin_popcountll(mask));
    }
    return out;
}

}  // namespace detail

inline Attribution kernel_shap(const ModelFn& f, std::span<const double> x,
                               const std::vector<std::vector<double>>& background,
                               int n_coalitions, std::uint64_t seed) {
    const int m = int(x.size());
    if (background.empty()) throw EmptyBackground();
    if (m < 1 || m > 62) throw InvalidConfig("kernel SHAP supports 1..62 features");
    if (n_coalitions < m + 2) {
        throw InvalidConfig("n_coalitions must be at least M+2 = " + std::to_string(m + 2));
    }

    Attribution attr;
    attr.base_value = detail::coalition_value(f, x, background, 0);
    std::vector<double> xv(x.begin(), x.end());
    attr.predicted = f(xv);
    const double delta = attr.predicted - attr.base_value;

    if (m == 1) {
        attr.phi = {delta};
        return attr;
    }

    const bool exhaustive =
        m <= 30 && std::uint64_t(n_coalitions) - 2 >= (std::uint64_t(1) << m) - 2;

    Rng rng(seed);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const auto coalitions = exhaustive
                                    ? detail::enumerate_coalitions(m)
                                    : detail::sample_coalitions(m, n_coalitions - 2, rng);

        // Solve the constrained weighted least squares by substituting
        // phi[m-1] = delta - sum(others).
        const std::size_t rows = coalitions.size();
        Eigen::MatrixXd a(rows, m - 1);
        Eigen::VectorXd y(rows);
        std::size_t r = 0;
        for (const auto& [mask, w] : coalitions) {
            const double sw = std::sqrt(w);
            const double z_last = double((mask >> (m - 1)) & 1);
            for (int j = 0; j < m - 1; ++j) {
                a(r, j) = sw * (double((mask >> j) & 1) - z_last);
            }
            const double v = detail::coalition_value(f, x, background, mask);
            y(r) = sw * ((v - attr.base_value) - z_last * delta);
            ++r;
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        qr.setThreshold(1e-10);
        if (qr.rank() < m - 1) {
            if (exhaustive || attempt == 1) {
                throw DegenerateSystem("sampled coalition design matrix is rank-deficient");
            }
            continue;  // resample once from the advanced rng state
        }
        const Eigen::VectorXd psi = qr.solve(y);
        attr.phi.assign(m, 0.0);
        double sum = 0.0;
        for (int j = 0; j < m - 1; ++j) {
            attr.phi[j] = psi(j);
            sum += psi(j);
        }
        attr.phi[m - 1] = delta - sum;
        return attr;
    }
    throw DegenerateSystem("unreachable");
}

}  // namespace sideout
