// Chronological train/test split. The test set is the final slice of the
// (date-sorted) input, so no test row ever predates a train row.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "sideout/errors.hpp"

namespace sideout {

// test size = ceil(n * fraction); the epsilon keeps exact products like
// 100 * 0.2 from rounding up through floating point noise.
template <class T>
std::pair<std::vector<T>, std::vector<T>> chronological_split(
    const std::vector<T>& rows, double test_fraction) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidConfig("test_fraction must be in (0,1), got " +
                            std::to_string(test_fraction));
    }
    const std::size_t n = rows.size();
    const auto n_test = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) * test_fraction - 1e-9));
    if (n_test == 0 || n_test >= n) {
        throw DegenerateSplit("split of " + std::to_string(n) + " rows at fraction " +
                              std::to_string(test_fraction) +
                              " leaves an empty train or test set");
    }
    std::vector<T> train(rows.begin(), rows.begin() + (n - n_test));
    std::vector<T> test(rows.begin() + (n - n_test), rows.end());
    return {std::move(train), std::move(test)};
}

}  // namespace sideout
