// Row-major numeric dataset plus train-time standardization captured for
// test-time reuse.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sideout/errors.hpp"
#include "sideout/types.hpp"

namespace sideout {

struct Dataset {
    std::vector<double> x;  // row-major, rows() * cols()
    std::vector<int> y;
    std::vector<std::string> feature_names;
    std::vector<std::string> ids;

    std::size_t rows() const { return y.size(); }
    std::size_t cols() const { return feature_names.size(); }

    std::span<const double> row(std::size_t i) const {
        return {x.data() + i * cols(), cols()};
    }

    std::vector<double> row_copy(std::size_t i) const {
        auto r = row(i);
        return {r.begin(), r.end()};
    }

    void validate() const {
        if (rows() == 0) throw EmptyDataset("dataset has no rows");
        if (x.size() != rows() * cols()) throw DataError("dataset shape mismatch");
        for (double v : x) {
            if (!std::isfinite(v)) throw NonFiniteInput("dataset contains non-finite value");
        }
        for (int label : y) {
            if (label != 0 && label != 1) throw DataError("labels must be 0 or 1");
        }
    }

    bool both_classes_present() const {
        bool has0 = false, has1 = false;
        for (int label : y) (label == 1 ? has1 : has0) = true;
        return has0 && has1;
    }

    static Dataset from_features(const std::vector<FeatureVector>& rows) {
        Dataset d;
        d.feature_names.assign(kFeatureNames.begin(), kFeatureNames.end());
        d.x.reserve(rows.size() * kNumFeatures);
        for (const auto& fv : rows) {
            d.x.insert(d.x.end(), fv.values.begin(), fv.values.end());
            d.y.push_back(fv.label);
            d.ids.push_back(fv.match_id);
        }
        return d;
    }
};

// Per-feature (mean, std) captured from training data. Constant columns get
// std = 1 and a flag so they map to zero instead of blowing up.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<std::uint8_t> constant;

    std::size_t cols() const { return mean.size(); }

    static Standardizer fit(const Dataset& train) {
        train.validate();
        const std::size_t n = train.rows(), d = train.cols();
        Standardizer s;
        s.mean.assign(d, 0.0);
        s.stddev.assign(d, 0.0);
        s.constant.assign(d, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto r = train.row(i);
            for (std::size_t j = 0; j < d; ++j) s.mean[j] += r[j];
        }
        for (std::size_t j = 0; j < d; ++j) s.mean[j] /= double(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto r = train.row(i);
            for (std::size_t j = 0; j < d; ++j) {
                const double c = r[j] - s.mean[j];
                s.stddev[j] += c * c;
            }
        }
        for (std::size_t j = 0; j < d; ++j) {
            s.stddev[j] = std::sqrt(s.stddev[j] / double(n));
            if (s.stddev[j] <= 0.0) {
                s.stddev[j] = 1.0;
                s.constant[j] = 1;
            }
        }
        return s;
    }

    std::vector<double> apply(std::span<const double> row) const {
        std::vector<double> out(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            out[j] = (row[j] - mean[j]) / stddev[j];
        }
        return out;
    }

    Dataset apply(const Dataset& data) const {
        Dataset out = data;
        const std::size_t d = data.cols();
        for (std::size_t i = 0; i < data.rows(); ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                out.x[i * d + j] = (data.x[i * d + j] - mean[j]) / stddev[j];
            }
        }
        return out;
    }
};

inline std::pair<Dataset, Standardizer> standardize(const Dataset& train) {
    Standardizer s = Standardizer::fit(train);
    return {s.apply(train), s};
}

}  // namespace sideout
