#include <gtest/gtest.h>

#include <optional>
#include <set>

#include "sideout/features.hpp"
#include "sideout/synth.hpp"
#include "support/helpers.hpp"

using namespace sideout;
using testsupport::make_match;

namespace {

// Independent fold used to derive expected form values.
double fold_ema(std::initializer_list<double> xs, double alpha) {
    std::optional<double> acc;
    for (double x : xs) acc = acc ? alpha * x + (1 - alpha) * *acc : x;
    return acc.value_or(0.0);
}

TEST(EmaUpdate, InitializationFixedPointAndArithmetic) {
    EXPECT_DOUBLE_EQ(ema_update(std::nullopt, 90.0, 0.3), 90.0);
    EXPECT_DOUBLE_EQ(ema_update(80.0, 80.0, 0.3), 80.0);
    EXPECT_DOUBLE_EQ(ema_update(80.0, 90.0, 0.3), 83.0);  // 0.3*90 + 0.7*80
}

TEST(EmaUpdate, RejectsAlphaOutsideUnitInterval) {
    EXPECT_THROW(ema_update(1.0, 2.0, 0.0), InvalidAlpha);
    EXPECT_THROW(ema_update(1.0, 2.0, -0.2), InvalidAlpha);
    EXPECT_THROW(ema_update(1.0, 2.0, 1.5), InvalidAlpha);
    EXPECT_NO_THROW(ema_update(1.0, 2.0, 1.0));
}

TEST(ComputeForm, EmptyConstantAndFoldCases) {
    EXPECT_DOUBLE_EQ(compute_form({}, 0.5), 0.0);
    const std::vector<double> constant = {2, 2, 2, 2, 2};
    EXPECT_DOUBLE_EQ(compute_form(constant, 0.3), 2.0);
    // fold: ema(ema(absent, 3), -3) = 0.5*(-3) + 0.5*3 = 0
    const std::vector<double> up_down = {3, -3};
    EXPECT_DOUBLE_EQ(compute_form(up_down, 0.5), fold_ema({3, -3}, 0.5));
    EXPECT_DOUBLE_EQ(compute_form(up_down, 0.5), 0.0);
}

TEST(RestDays, CapAndDefaults) {
    const Date d0 = make_date(2020, 1, 1);
    EXPECT_DOUBLE_EQ(rest_days(std::nullopt, d0), 7.0);
    EXPECT_DOUBLE_EQ(rest_days(d0, d0 + std::chrono::days(10)), 7.0);
    EXPECT_DOUBLE_EQ(rest_days(d0, d0 + std::chrono::days(3)), 3.0);
    EXPECT_DOUBLE_EQ(rest_days(d0, d0), 0.0);
    EXPECT_THROW(rest_days(d0, d0 - std::chrono::days(1)), NegativeInterval);
}

TEST(MatchImportance, StageMapping) {
    EXPECT_EQ(match_importance(Stage::League), 0);
    EXPECT_EQ(match_importance(Stage::QuarterFinal), 1);
    EXPECT_EQ(match_importance(Stage::SemiFinal), 2);
    EXPECT_EQ(match_importance(Stage::Final), 3);
}

std::vector<RawMatch> four_team_fixture() {
    return {
        make_match("m1", "2020-01-01", "s1", "A", "B", 3, 1, 98, 87),
        make_match("m2", "2020-01-08", "s1", "C", "A", 0, 3, 60, 76),
        make_match("m3", "2020-01-15", "s1", "A", "D", 3, 2, 110, 102),
        make_match("m4", "2020-01-22", "s1", "B", "A", 1, 3, 80, 95),
        make_match("m5", "2020-01-29", "s1", "A", "C", 3, 0, 75, 50),
    };
}

TEST(BuildFeatures, ColdStartDefaults) {
    auto fvs = build_features(four_team_fixture(), 0.2);
    const auto& f = fvs[0].values;
    const double sentinel = 5.0;  // 4 distinct teams + 1
    EXPECT_DOUBLE_EQ(f[feat::kHomeCurrentPosition], sentinel);
    EXPECT_DOUBLE_EQ(f[feat::kAwayCurrentPosition], sentinel);
    EXPECT_DOUBLE_EQ(f[feat::kHomePrevSeasonPosition], sentinel);
    EXPECT_DOUBLE_EQ(f[feat::kAwayPrevSeasonPosition], sentinel);
    EXPECT_DOUBLE_EQ(f[feat::kHomeWinPercentage], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kAwayWinPercentage], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kAwayForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeHomeForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kAwayAwayForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHeadToHeadForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeRestTime], 7.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeAvgPoints], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeAvgPointsConceded], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomePrevGamePerformance], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kMatchImportance], 0.0);
    EXPECT_EQ(fvs[0].label, 1);
}

TEST(BuildFeatures, WinPercentageAfterFourStraightWins) {
    auto fvs = build_features(four_team_fixture(), 0.2);
    const auto& f = fvs[4].values;  // m5, A at home after 4 wins
    EXPECT_DOUBLE_EQ(f[feat::kHomeWinPercentage], 100.0);
    // C has played once and lost.
    EXPECT_DOUBLE_EQ(f[feat::kAwayWinPercentage], 0.0);
    // A tops the table outright by then.
    EXPECT_DOUBLE_EQ(f[feat::kHomeCurrentPosition], 1.0);
}

TEST(BuildFeatures, RollingStateMatchesHandFolds) {
    const double alpha = 0.2;
    auto fvs = build_features(four_team_fixture(), alpha);

    // m2: A away. A's points EMA initialized from m1.
    EXPECT_DOUBLE_EQ(fvs[1].values[feat::kAwayAvgPoints], 98.0);
    EXPECT_DOUBLE_EQ(fvs[1].values[feat::kAwayAvgPointsConceded], 87.0);

    // m5: A's diffs so far +2,+3,+1,+2; home diffs +2,+1.
    EXPECT_DOUBLE_EQ(fvs[4].values[feat::kHomeForm], fold_ema({2, 3, 1, 2}, alpha));
    EXPECT_DOUBLE_EQ(fvs[4].values[feat::kHomeHomeForm], fold_ema({2, 1}, alpha));
    EXPECT_DOUBLE_EQ(fvs[4].values[feat::kHomePrevGamePerformance], 2.0);
    // A's points EMA: fold of 98, 76, 110, 95.
    EXPECT_DOUBLE_EQ(fvs[4].values[feat::kHomeAvgPoints], fold_ema({98, 76, 110, 95}, alpha));
    EXPECT_DOUBLE_EQ(fvs[4].values[feat::kHomeAvgPointsConceded],
                     fold_ema({87, 60, 102, 80}, alpha));
    // m5 is 7 days after A's previous match.
    EXPECT_DOUBLE_EQ(fvs[4].values[feat::kHomeRestTime], 7.0);
}

TEST(BuildFeatures, HeadToHeadIsAntisymmetricAcrossVenues) {
    const double alpha = 0.2;
    std::vector<RawMatch> ms = {
        make_match("m1", "2020-01-01", "s1", "A", "B", 3, 1, 98, 87),
        make_match("m2", "2020-01-08", "s1", "B", "A", 3, 0, 75, 55),
        make_match("m3", "2020-01-15", "s1", "A", "B", 3, 2, 110, 100),
    };
    auto fvs = build_features(ms, alpha);
    // m2 (B home): history from B's view is -2.
    EXPECT_DOUBLE_EQ(fvs[1].values[feat::kHeadToHeadForm], -2.0);
    // m3 (A home): A's view folds +2 then -3.
    EXPECT_DOUBLE_EQ(fvs[2].values[feat::kHeadToHeadForm], fold_ema({2, -3}, alpha));
}

TEST(BuildFeatures, FormWindowIsCappedAtFive) {
    const double alpha = 0.2;
    std::vector<RawMatch> ms;
    // A alternates hosting B and C weekly, always winning 3-0, except the
    // very first match which A loses; after six more matches that loss must
    // have rolled out of the five-match window.
    ms.push_back(make_match("m0", "2020-01-01", "s1", "A", "B", 0, 3, 60, 75));
    for (int i = 1; i <= 6; ++i) {
        ms.push_back(make_match("m" + std::to_string(i),
                                format_date(make_date(2020, 1, 1) + std::chrono::days(7 * i)),
                                "s1", "A", i % 2 ? "B" : "C", 3, 0, 75, 50));
    }
    ms.push_back(make_match("m7", format_date(make_date(2020, 1, 1) + std::chrono::days(49)),
                            "s1", "A", "B", 3, 0, 75, 50));
    auto fvs = build_features(ms, alpha);
    // Window for the last match: five 3-0 wins only.
    EXPECT_DOUBLE_EQ(fvs.back().values[feat::kHomeForm], 3.0);
}

TEST(BuildFeatures, SeasonBoundarySemantics) {
    const double alpha = 0.2;
    std::vector<RawMatch> ms = four_team_fixture();
    // Second season: A hosts B again.
    ms.push_back(make_match("m6", "2020-10-01", "s2", "A", "B", 3, 1, 90, 70));
    auto fvs = build_features(ms, alpha);
    const auto& f = fvs[5].values;

    // Ranks freeze into previous-season position at the boundary.
    EXPECT_DOUBLE_EQ(f[feat::kHomePrevSeasonPosition], 1.0);
    // Current position carries the frozen rank until the team plays again.
    EXPECT_DOUBLE_EQ(f[feat::kHomeCurrentPosition], 1.0);
    // Short-horizon state resets...
    EXPECT_DOUBLE_EQ(f[feat::kHomeForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeHomeForm], 0.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomeRestTime], 7.0);
    // ...while EMAs, win counts, head-to-head and the last-game performance
    // persist across the boundary.
    EXPECT_DOUBLE_EQ(f[feat::kHomeAvgPoints], fold_ema({98, 76, 110, 95, 75}, alpha));
    EXPECT_DOUBLE_EQ(f[feat::kHomeWinPercentage], 100.0);
    EXPECT_DOUBLE_EQ(f[feat::kHomePrevGamePerformance], 3.0);
    // A's meetings with B: 3-1 at home, then 3-1 away; +2 from A's view twice.
    EXPECT_DOUBLE_EQ(f[feat::kHeadToHeadForm], fold_ema({2, 2}, alpha));
}

TEST(BuildFeatures, RejectsUnsortedInputAndBadAlpha) {
    std::vector<RawMatch> ms = {
        make_match("m1", "2020-01-08", "s1", "A", "B", 3, 1),
        make_match("m2", "2020-01-01", "s1", "C", "D", 3, 1),
    };
    EXPECT_THROW(build_features(ms, 0.2), DataError);
    EXPECT_THROW(build_features(four_team_fixture(), 0.0), InvalidAlpha);
}

TEST(BuildFeatures, EmittedRangesOnSyntheticLeague) {
    LeagueConfig cfg;
    cfg.n_teams = 12;
    cfg.n_seasons = 3;
    cfg.seed = 5;
    auto fvs = build_features(generate_synthetic_league(cfg), 0.2);
    ASSERT_GT(fvs.size(), 100u);
    for (const auto& fv : fvs) {
        for (double v : fv.values) EXPECT_TRUE(std::isfinite(v));
        const double imp = fv.values[feat::kMatchImportance];
        EXPECT_TRUE(imp == 0 || imp == 1 || imp == 2 || imp == 3);
        EXPECT_GE(fv.values[feat::kHomeRestTime], 0.0);
        EXPECT_LE(fv.values[feat::kHomeRestTime], 7.0);
        EXPECT_GE(fv.values[feat::kHomeWinPercentage], 0.0);
        EXPECT_LE(fv.values[feat::kHomeWinPercentage], 100.0);
        EXPECT_GE(fv.values[feat::kAwayWinPercentage], 0.0);
        EXPECT_LE(fv.values[feat::kAwayWinPercentage], 100.0);
        EXPECT_GE(fv.values[feat::kHomeCurrentPosition], 1.0);
        EXPECT_LE(fv.values[feat::kHomeCurrentPosition], 13.0);
        EXPECT_TRUE(fv.label == 0 || fv.label == 1);
    }
    // Both rest branches must occur.
    bool saw_capped = false, saw_below = false;
    for (const auto& fv : fvs) {
        if (fv.values[feat::kHomeRestTime] == 7.0) saw_capped = true;
        if (fv.values[feat::kHomeRestTime] < 7.0) saw_below = true;
    }
    EXPECT_TRUE(saw_capped);
    EXPECT_TRUE(saw_below);
}

// Corrupting the outcome of match k must not change match k's features:
// they are a function of strictly earlier matches only.
TEST(BuildFeatures, NoLeakageFromOwnOutcome) {
    LeagueConfig cfg;
    cfg.n_teams = 8;
    cfg.n_seasons = 2;
    cfg.seed = 17;
    auto matches = generate_synthetic_league(cfg);
    auto baseline = build_features(matches, 0.2);

    for (std::size_t k : {std::size_t(5), std::size_t(40), matches.size() - 1}) {
        auto corrupted = matches;
        std::swap(corrupted[k].home_sets, corrupted[k].away_sets);
        std::swap(corrupted[k].home_points, corrupted[k].away_points);
        corrupted[k].home_points += 7;
        auto fvs = build_features(corrupted, 0.2);
        for (int j = 0; j < kNumFeatures; ++j) {
            EXPECT_DOUBLE_EQ(fvs[k].values[j], baseline[k].values[j])
                << "k=" << k << " feature " << kFeatureNames[j];
        }
        EXPECT_NE(fvs[k].label, baseline[k].label);
    }
}

// Prefix replay: rebuilding from only the first j matches (with the roster
// size pinned) reproduces the full run's first j vectors bit for bit.
TEST(BuildFeatures, PrefixReplayEquality) {
    LeagueConfig cfg;
    cfg.n_teams = 8;
    cfg.n_seasons = 2;
    cfg.seed = 29;
    auto matches = generate_synthetic_league(cfg);
    auto full = build_features(matches, 0.2);

    std::set<std::string> roster;
    for (const auto& m : matches) {
        roster.insert(m.home_team);
        roster.insert(m.away_team);
    }
    const int n_teams = int(roster.size());

    for (std::size_t j : {std::size_t(1), std::size_t(10), std::size_t(60),
                          matches.size() / 2, matches.size()}) {
        std::vector<RawMatch> prefix(matches.begin(), matches.begin() + j);
        auto replay = build_features(prefix, 0.2, n_teams);
        ASSERT_EQ(replay.size(), j);
        for (std::size_t k = 0; k < j; ++k) {
            for (int f = 0; f < kNumFeatures; ++f) {
                ASSERT_DOUBLE_EQ(replay[k].values[f], full[k].values[f])
                    << "prefix " << j << " row " << k << " feature " << kFeatureNames[f];
            }
        }
    }
}

// Shifting every point total by a constant moves only the two points-EMA
// features.
TEST(BuildFeatures, PointShiftTouchesOnlyPointAverages) {
    LeagueConfig cfg;
    cfg.n_teams = 8;
    cfg.n_seasons = 2;
    cfg.seed = 31;
    auto matches = generate_synthetic_league(cfg);
    auto baseline = build_features(matches, 0.2);

    auto shifted = matches;
    for (auto& m : shifted) {
        m.home_points += 50;
        m.away_points += 50;
    }
    auto fvs = build_features(shifted, 0.2);
    ASSERT_EQ(fvs.size(), baseline.size());
    for (std::size_t k = 0; k < fvs.size(); ++k) {
        for (int j = 0; j < kNumFeatures; ++j) {
            const bool points_feature =
                j == feat::kHomeAvgPoints || j == feat::kHomeAvgPointsConceded ||
                j == feat::kAwayAvgPoints || j == feat::kAwayAvgPointsConceded;
            if (!points_feature) {
                ASSERT_DOUBLE_EQ(fvs[k].values[j], baseline[k].values[j])
                    << "row " << k << " feature " << kFeatureNames[j];
            }
        }
        EXPECT_EQ(fvs[k].label, baseline[k].label);
    }
}

}  // namespace
