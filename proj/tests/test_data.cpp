#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "sideout/csv.hpp"
#include "sideout/split.hpp"
#include "sideout/synth.hpp"
#include "support/helpers.hpp"

using namespace sideout;

namespace {

TEST(ParseMatchesCsv, ParsesSingleRow) {
    std::istringstream in(
        "match_id,date,season,home_team,away_team,home_sets,away_sets,"
        "home_points,away_points,stage\n"
        "m1,2014-12-05,2014-15,Canoas,America Volei,3,1,98,87,League\n");
    auto matches = parse_matches_csv(in);
    ASSERT_EQ(matches.size(), 1u);
    const auto& m = matches[0];
    EXPECT_EQ(m.match_id, "m1");
    EXPECT_EQ(format_date(m.date), "2014-12-05");
    EXPECT_EQ(m.season, "2014-15");
    EXPECT_EQ(m.home_team, "Canoas");
    EXPECT_EQ(m.away_team, "America Volei");
    EXPECT_EQ(m.home_sets, 3);
    EXPECT_EQ(m.away_sets, 1);
    EXPECT_EQ(m.home_points, 98);
    EXPECT_EQ(m.away_points, 87);
    EXPECT_EQ(m.stage, Stage::League);
    EXPECT_TRUE(m.home_won());
}

TEST(ParseMatchesCsv, HeaderOnlyGivesEmptySequence) {
    std::istringstream in(std::string(kMatchCsvHeader) + "\n");
    EXPECT_TRUE(parse_matches_csv(in).empty());
}

TEST(ParseMatchesCsv, RejectsImpossibleSetScore) {
    std::istringstream in(std::string(kMatchCsvHeader) +
                          "\nm1,2014-12-05,s1,A,B,2,2,90,90,League\n");
    EXPECT_THROW(parse_matches_csv(in), InvariantViolation);
}

TEST(ParseMatchesCsv, ReportsLineNumberForMalformedRow) {
    std::istringstream in(std::string(kMatchCsvHeader) +
                          "\nm1,2014-12-05,s1,A,B,3,1,90,80,League\n"
                          "m2,2014-12-06,s1,A,B,3,x,90,80,League\n");
    try {
        parse_matches_csv(in);
        FAIL() << "expected MalformedRow";
    } catch (const MalformedRow& e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(ParseMatchesCsv, RejectsBadHeaderAndBadStageAndSelfPlay) {
    std::istringstream bad_header("id,date\n");
    EXPECT_THROW(parse_matches_csv(bad_header), MalformedRow);

    std::istringstream bad_stage(std::string(kMatchCsvHeader) +
                                 "\nm1,2014-12-05,s1,A,B,3,1,90,80,Playoff\n");
    EXPECT_THROW(parse_matches_csv(bad_stage), MalformedRow);

    std::istringstream self_play(std::string(kMatchCsvHeader) +
                                 "\nm1,2014-12-05,s1,A,A,3,1,90,80,League\n");
    EXPECT_THROW(parse_matches_csv(self_play), InvariantViolation);
}

TEST(ParseMatchesCsv, SortsByDateThenId) {
    std::istringstream in(std::string(kMatchCsvHeader) +
                          "\nm9,2015-01-02,s1,A,B,3,0,75,50,League\n"
                          "m2,2014-12-05,s1,C,D,3,1,98,87,League\n"
                          "m1,2015-01-02,s1,E,F,1,3,60,80,League\n");
    auto matches = parse_matches_csv(in);
    ASSERT_EQ(matches.size(), 3u);
    EXPECT_EQ(matches[0].match_id, "m2");
    EXPECT_EQ(matches[1].match_id, "m1");
    EXPECT_EQ(matches[2].match_id, "m9");
}

TEST(MatchCsv, RoundTripIsIdentity) {
    LeagueConfig cfg;
    cfg.n_teams = 6;
    cfg.n_seasons = 2;
    cfg.seed = 11;
    auto matches = generate_synthetic_league(cfg);

    std::ostringstream out;
    write_matches_csv(out, matches);
    std::istringstream in(out.str());
    auto parsed = parse_matches_csv(in);

    ASSERT_EQ(parsed.size(), matches.size());
    for (std::size_t i = 0; i < matches.size(); ++i) {
        EXPECT_EQ(parsed[i].match_id, matches[i].match_id);
        EXPECT_EQ(parsed[i].date, matches[i].date);
        EXPECT_EQ(parsed[i].season, matches[i].season);
        EXPECT_EQ(parsed[i].home_team, matches[i].home_team);
        EXPECT_EQ(parsed[i].away_team, matches[i].away_team);
        EXPECT_EQ(parsed[i].home_sets, matches[i].home_sets);
        EXPECT_EQ(parsed[i].away_sets, matches[i].away_sets);
        EXPECT_EQ(parsed[i].home_points, matches[i].home_points);
        EXPECT_EQ(parsed[i].away_points, matches[i].away_points);
        EXPECT_EQ(parsed[i].stage, matches[i].stage);
    }
}

TEST(SyntheticLeague, DeterministicGivenSeed) {
    LeagueConfig cfg;
    cfg.n_teams = 10;
    cfg.n_seasons = 2;
    cfg.seed = 7;
    auto a = generate_synthetic_league(cfg);
    auto b = generate_synthetic_league(cfg);
    std::ostringstream sa, sb;
    write_matches_csv(sa, a);
    write_matches_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());

    cfg.seed = 8;
    std::ostringstream sc;
    write_matches_csv(sc, generate_synthetic_league(cfg));
    EXPECT_NE(sa.str(), sc.str());
}

TEST(SyntheticLeague, RejectsTooFewTeams) {
    LeagueConfig cfg;
    cfg.n_teams = 3;
    EXPECT_THROW(generate_synthetic_league(cfg), InvalidConfig);
}

TEST(SyntheticLeague, DoubleRoundRobinMatchCounts) {
    LeagueConfig cfg;
    cfg.n_teams = 10;
    cfg.n_seasons = 1;
    cfg.seed = 3;
    auto matches = generate_synthetic_league(cfg);

    std::map<std::string, int> league_appearances;
    std::map<std::pair<std::string, std::string>, int> pairings;
    int playoff = 0;
    for (const auto& m : matches) {
        if (m.stage == Stage::League) {
            league_appearances[m.home_team] += 1;
            league_appearances[m.away_team] += 1;
            pairings[{m.home_team, m.away_team}] += 1;
        } else {
            ++playoff;
        }
    }
    ASSERT_EQ(league_appearances.size(), 10u);
    for (const auto& [team, count] : league_appearances) EXPECT_EQ(count, 18) << team;
    // one home meeting per ordered pair
    for (const auto& [pair, count] : pairings) EXPECT_EQ(count, 1);
    EXPECT_EQ(pairings.size(), 90u);
    EXPECT_EQ(playoff, 4 + 2 + 1);
}

TEST(SyntheticLeague, ValidatesAllInvariantsAndChronology) {
    LeagueConfig cfg;
    cfg.n_teams = 9;  // odd count exercises byes
    cfg.n_seasons = 3;
    cfg.seed = 21;
    auto matches = generate_synthetic_league(cfg);
    ASSERT_FALSE(matches.empty());
    for (std::size_t i = 0; i < matches.size(); ++i) {
        EXPECT_NO_THROW(matches[i].validate());
        if (i > 0) EXPECT_LE(matches[i - 1].date, matches[i].date);
    }
    // Seasons must not interleave.
    std::vector<std::string> seen;
    for (const auto& m : matches) {
        if (seen.empty() || seen.back() != m.season) seen.push_back(m.season);
    }
    EXPECT_EQ(seen.size(), 3u);
}

// With no home advantage and (near) zero strength spread every match is a
// coin flip; the empirical home-win rate must sit inside a 3-sigma binomial
// band around 0.5.
TEST(SyntheticLeague, NeutralConfigHasBalancedHomeWins) {
    LeagueConfig cfg;
    cfg.n_teams = 14;
    cfg.n_seasons = 6;
    cfg.home_advantage = 0.0;
    cfg.strength_spread = 1e-9;
    cfg.drift = 0.0;
    cfg.seed = 123;
    auto matches = generate_synthetic_league(cfg);
    ASSERT_GT(matches.size(), 1000u);
    double wins = 0;
    for (const auto& m : matches) wins += m.home_won() ? 1 : 0;
    const double n = double(matches.size());
    const double rate = wins / n;
    const double sigma = std::sqrt(0.25 / n);
    EXPECT_NEAR(rate, 0.5, 3.0 * sigma);
}

// Win frequency of the stronger team must rise with the strength gap.
TEST(SyntheticLeague, StrongerTeamWinRateMonotoneInStrengthGap) {
    LeagueConfig cfg;
    cfg.n_teams = 16;
    cfg.n_seasons = 9;
    cfg.home_advantage = 0.0;
    cfg.strength_spread = 1.0;
    cfg.drift = 0.05;
    cfg.seed = 99;
    auto result = generate_synthetic_league_detailed(cfg);
    ASSERT_GE(result.matches.size(), 2000u);

    std::map<std::string, int> team_index;
    for (std::size_t i = 0; i < result.team_names.size(); ++i) {
        team_index[result.team_names[i]] = int(i);
    }
    std::map<std::string, int> season_index;
    {
        int next = 0;
        for (const auto& m : result.matches) {
            if (!season_index.count(m.season)) season_index[m.season] = next++;
        }
    }

    const double edges[5] = {0.0, 0.5, 1.0, 2.0, 1e9};
    double wins[4] = {0, 0, 0, 0};
    double total[4] = {0, 0, 0, 0};
    for (const auto& m : result.matches) {
        const auto& s = result.strengths[season_index[m.season]];
        const double sh = s[team_index[m.home_team]];
        const double sa = s[team_index[m.away_team]];
        const double gap = std::abs(sh - sa);
        const bool stronger_won = (sh > sa) == m.home_won();
        for (int b = 0; b < 4; ++b) {
            if (gap >= edges[b] && gap < edges[b + 1]) {
                total[b] += 1;
                wins[b] += stronger_won ? 1 : 0;
            }
        }
    }
    double prev = 0.0;
    for (int b = 0; b < 4; ++b) {
        ASSERT_GT(total[b], 100) << "bin " << b << " too thin to test";
        const double rate = wins[b] / total[b];
        EXPECT_GE(rate, prev - 1e-12) << "bin " << b;
        prev = rate;
    }
}

TEST(ChronologicalSplit, BasicCountsAndOrdering) {
    std::vector<RawMatch> matches;
    for (int i = 0; i < 100; ++i) {
        matches.push_back(testsupport::make_match(
            "m" + std::to_string(1000 + i), format_date(make_date(2020, 1, 1) +
                                                        std::chrono::days(i)),
            "s1", "A", "B", 3, 0));
    }
    auto [train, test] = chronological_split(matches, 0.2);
    EXPECT_EQ(train.size(), 80u);
    EXPECT_EQ(test.size(), 20u);
    EXPECT_LE(train.back().date, test.front().date);
    for (const auto& tr : train) {
        for (const auto& te : test) EXPECT_LE(tr.date, te.date);
    }
}

TEST(ChronologicalSplit, CeilRoundingRule) {
    std::vector<int> xs = {1, 2, 3, 4, 5};
    auto [train, test] = chronological_split(xs, 0.2);
    EXPECT_EQ(train.size(), 4u);
    EXPECT_EQ(test.size(), 1u);
    EXPECT_EQ(test[0], 5);
}

TEST(ChronologicalSplit, DegenerateSplits) {
    std::vector<int> two = {1, 2};
    EXPECT_THROW(chronological_split(two, 0.9), DegenerateSplit);
    std::vector<int> one = {1};
    EXPECT_THROW(chronological_split(one, 0.5), DegenerateSplit);
    EXPECT_THROW(chronological_split(two, 0.0), InvalidConfig);
    EXPECT_THROW(chronological_split(two, 1.0), InvalidConfig);
}

}  // namespace
