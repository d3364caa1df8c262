// Exact Shapley attributions by brute-force coalition enumeration, with the
// interventional (replace-by-background) value function
//   v(S) = mean over background rows b of f(x with features outside S taken
//   from b).
// Exponential in the feature count; guarded by an evaluation budget.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sideout/errors.hpp"

namespace sideout {

using ModelFn = std::function<double(std::span<const double>)>;

struct Attribution {
    std::string match_id;
    double base_value = 0.0;  // mean model output over the background set
    double predicted = 0.0;   // model output at x
    std::vector<double> phi;  // one signed contribution per feature
};

inline constexpr std::uint64_t kDefaultShapleyBudget = 5'000'000;

namespace detail {

// v(S) for every coalition bitmask, in mask order.
inline std::vector<double> coalition_values(const ModelFn& f, std::span<const double> x,
                                            const std::vector<std::vector<double>>& background) {
    const int m = int(x.size());
    std::vector<double> v(std::size_t(1) << m, 0.0);
    std::vector<double> row(m);
    for (std::uint64_t mask = 0; mask < v.size(); ++mask) {
        double acc = 0.0;
        for (const auto& b : background) {
            for (int i = 0; i < m; ++i) {
                row[i] = (mask >> i) & 1 ? x[i] : b[i];
            }
            acc += f(row);
        }
        v[mask] = acc / double(background.size());
    }
    return v;
}

}  // namespace detail

inline Attribution exact_shapley(const ModelFn& f, std::span<const double> x,
                                 const std::vector<std::vector<double>>& background,
                                 std::uint64_t budget = kDefaultShapleyBudget) {
    const int m = int(x.size());
    if (background.empty()) throw EmptyBackground();
    if (m > 20) {
        throw BudgetExceeded("exact Shapley limited to 20 features, got " + std::to_string(m));
    }
    const std::uint64_t evals = (std::uint64_t(1) << m) * background.size();
    if (evals > budget) {
        throw BudgetExceeded("exact Shapley would need " + std::to_string(evals) +
                             " model evaluations (budget " + std::to_string(budget) + ")");
    }

    const auto v = detail::coalition_values(f, x, background);

    // phi_i = sum over S not containing i of |S|!(m-|S|-1)!/m! (v(S+i) - v(S))
    std::vector<double> weight(m);
    for (int s = 0; s < m; ++s) {
        double w = 1.0 / double(m);  // = s!(m-s-1)!/m! computed iteratively
        for (int k = 1; k <= s; ++k) w *= double(k) / double(m - k);
        weight[s] = w;
    }

    Attribution attr;
    attr.phi.assign(m, 0.0);
    for (std::uint64_t mask = 0; mask < v.size(); ++mask) {
        const int size = __builtin_popcountll(mask);
        if (size == m) continue;
        const double w = weight[size];
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1) continue;
            attr.phi[i] += w * (v[mask | (std::uint64_t(1) << i)] - v[mask]);
        }
    }
    attr.base_value = v[0];
    attr.predicted = v[v.size() - 1];
    return attr;
}

}  // namespace sideout
