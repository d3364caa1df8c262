// Attribution demo on a hand-built linear scorer: for a linear model the
// Shapley value of feature i is w_i * (x_i - mean background_i), so both
// explainers can be checked against the closed form by eye.
#include <cstdio>
#include <vector>

#include "sideout/explain/kernel_shap.hpp"
#include "sideout/explain/shapley.hpp"

int main() {
    using namespace sideout;

    const std::vector<double> w = {0.8, -0.5, 0.3, 0.0};
    ModelFn linear = [&](std::span<const double> x) {
        double s = 0.1;
        for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
        return s;
    };

    std::vector<double> x = {1.0, 2.0, -1.0, 4.0};
    std::vector<std::vector<double>> background = {
        {0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}, {-1.0, 0.5, 0.0, 2.0}};

    Attribution exact = exact_shapley(linear, x, background);
    Attribution sampled = kernel_shap(linear, x, background, 64, /*seed=*/1);

    std::printf("%8s %12s %12s %12s\n", "feature", "closed form", "exact", "kernel");
    for (std::size_t i = 0; i < w.size(); ++i) {
        double mean_bg = 0.0;
        for (const auto& b : background) mean_bg += b[i];
        mean_bg /= double(background.size());
        std::printf("%8zu %12.6f %12.6f %12.6f\n", i, w[i] * (x[i] - mean_bg),
                    exact.phi[i], sampled.phi[i]);
    }
    return 0;
}
