// Core domain types: raw match records, synthetic league configuration and
// the 19-feature vector layout shared by the whole pipeline.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "sideout/date.hpp"
#include "sideout/errors.hpp"

namespace sideout {

enum class Stage { League, QuarterFinal, SemiFinal, Final };

inline const char* to_string(Stage s) {
    switch (s) {
        case Stage::League: return "League";
        case Stage::QuarterFinal: return "QuarterFinal";
        case Stage::SemiFinal: return "SemiFinal";
        case Stage::Final: return "Final";
    }
    return "?";
}

inline Stage parse_stage(const std::string& s) {
    if (s == "League") return Stage::League;
    if (s == "QuarterFinal") return Stage::QuarterFinal;
    if (s == "SemiFinal") return Stage::SemiFinal;
    if (s == "Final") return Stage::Final;
    throw DataError("unknown stage '" + s + "'");
}

// One played best-of-five match.
struct RawMatch {
    std::string match_id;
    Date date{};
    std::string season;
    std::string home_team;
    std::string away_team;
    int home_sets = 0;
    int away_sets = 0;
    int home_points = 0;  // total rally points across sets
    int away_points = 0;
    Stage stage = Stage::League;

    bool home_won() const { return home_sets > away_sets; }
    int set_diff() const { return home_sets - away_sets; }

    void validate() const {
        const bool home3 = home_sets == 3;
        const bool away3 = away_sets == 3;
        if (home3 == away3 || home_sets < 0 || away_sets < 0 || home_sets > 3 ||
            away_sets > 3) {
            throw InvariantViolation("match " + match_id +
                                     ": set score must have exactly one side at 3, got " +
                                     std::to_string(home_sets) + "-" +
                                     std::to_string(away_sets));
        }
        if (home_team == away_team) {
            throw InvariantViolation("match " + match_id + ": a team cannot play itself");
        }
        if (home_points <= 0 || away_points <= 0) {
            throw InvariantViolation("match " + match_id + ": points must be positive");
        }
    }
};

struct LeagueConfig {
    int n_teams = 12;
    int n_seasons = 3;
    double home_advantage = 0.3;
    double strength_spread = 1.0;  // std-dev of latent team strengths
    double drift = 0.1;            // per-season strength perturbation
    std::uint64_t seed = 42;

    void validate() const {
        if (n_teams < 4) {
            throw InvalidConfig("n_teams must be >= 4, got " + std::to_string(n_teams));
        }
        if (n_seasons < 1) {
            throw InvalidConfig("n_seasons must be >= 1, got " + std::to_string(n_seasons));
        }
        if (!(strength_spread > 0)) {
            throw InvalidConfig("strength_spread must be > 0");
        }
        if (drift < 0) {
            throw InvalidConfig("drift must be >= 0");
        }
        for (double v : {home_advantage, strength_spread, drift}) {
            if (!std::isfinite(v)) throw InvalidConfig("league parameters must be finite");
        }
    }
};

inline constexpr int kNumFeatures = 19;

// Feature column order is fixed; it is also the CSV column order.
inline constexpr std::array<const char*, kNumFeatures> kFeatureNames = {
    "away_current_position",
    "away_prev_season_position",
    "away_prev_game_performance",
    "away_avg_points",
    "away_avg_points_conceded",
    "away_away_form",
    "away_form",
    "away_win_percentage",
    "head_to_head_form",
    "home_current_position",
    "home_prev_season_position",
    "home_prev_game_performance",
    "home_avg_points",
    "home_avg_points_conceded",
    "home_form",
    "home_home_form",
    "home_rest_time",
    "home_win_percentage",
    "match_importance",
};

namespace feat {
inline constexpr int kAwayCurrentPosition = 0;
inline constexpr int kAwayPrevSeasonPosition = 1;
inline constexpr int kAwayPrevGamePerformance = 2;
inline constexpr int kAwayAvgPoints = 3;
inline constexpr int kAwayAvgPointsConceded = 4;
inline constexpr int kAwayAwayForm = 5;
inline constexpr int kAwayForm = 6;
inline constexpr int kAwayWinPercentage = 7;
inline constexpr int kHeadToHeadForm = 8;
inline constexpr int kHomeCurrentPosition = 9;
inline constexpr int kHomePrevSeasonPosition = 10;
inline constexpr int kHomePrevGamePerformance = 11;
inline constexpr int kHomeAvgPoints = 12;
inline constexpr int kHomeAvgPointsConceded = 13;
inline constexpr int kHomeForm = 14;
inline constexpr int kHomeHomeForm = 15;
inline constexpr int kHomeRestTime = 16;
inline constexpr int kHomeWinPercentage = 17;
inline constexpr int kMatchImportance = 18;
}  // namespace feat

struct FeatureVector {
    std::string match_id;
    std::array<double, kNumFeatures> values{};
    int label = 0;  // 1 if the home team won
};

}  // namespace sideout
