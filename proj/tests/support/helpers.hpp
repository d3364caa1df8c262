// Shared fixtures: temp directories, tiny hand-built match sets, and random
// dataset generators for model tests.
#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sideout/dataset.hpp"
#include "sideout/rng.hpp"
#include "sideout/types.hpp"

namespace testsupport {

class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("sideout-" + tag + "-" + std::to_string(rd()) + "-" +
                        std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& rel = "") const {
        return rel.empty() ? path_.string() : (path_ / rel).string();
    }

  private:
    std::filesystem::path path_;
};

inline sideout::RawMatch make_match(const std::string& id, const std::string& date,
                                    const std::string& season, const std::string& home,
                                    const std::string& away, int hs, int as,
                                    int hp = 90, int ap = 80,
                                    sideout::Stage stage = sideout::Stage::League) {
    sideout::RawMatch m;
    m.match_id = id;
    m.date = sideout::parse_date(date);
    m.season = season;
    m.home_team = home;
    m.away_team = away;
    m.home_sets = hs;
    m.away_sets = as;
    m.home_points = hp;
    m.away_points = ap;
    m.stage = stage;
    return m;
}

// Random binary-labeled dataset where the label depends on a linear score of
// the first few features plus noise.
inline sideout::Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed,
                                       double noise = 0.5) {
    sideout::Rng rng(seed);
    sideout::Dataset data;
    for (std::size_t j = 0; j < d; ++j) data.feature_names.push_back("f" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        double score = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = rng.next_normal();
            data.x.push_back(v);
            if (j < 3) score += (j == 1 ? -1.0 : 1.0) * v;
        }
        score += noise * rng.next_normal();
        data.y.push_back(score > 0 ? 1 : 0);
        data.ids.push_back("r" + std::to_string(i));
    }
    return data;
}

// Noise-free labels from a planted conjunction: y = 1 iff x[f1] > t1 and
// x[f2] <= t2, features uniform in [0, 1].
inline sideout::Dataset planted_rule_dataset(std::size_t n, std::size_t d, int f1, double t1,
                                             int f2, double t2, std::uint64_t seed) {
    sideout::Rng rng(seed);
    sideout::Dataset data;
    for (std::size_t j = 0; j < d; ++j) data.feature_names.push_back("f" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = rng.next_double();
        data.x.insert(data.x.end(), row.begin(), row.end());
        data.y.push_back(row[f1] > t1 && row[f2] <= t2 ? 1 : 0);
        data.ids.push_back("r" + std::to_string(i));
    }
    return data;
}

}  // namespace testsupport
