// Feature engineering: one forward pass over the chronological match stream,
// maintaining per-team rolling state. Each match's feature vector is emitted
// from state as of strictly earlier matches; the match outcome is folded into
// the state only afterwards, so no feature can see its own result.
//
// Season boundaries freeze current league positions into previous-season
// positions and reset the short-horizon state (form windows, rest). Win
// counts, points averages and head-to-head averages persist across seasons.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sideout/types.hpp"

namespace sideout {

// First observation initialises the average; afterwards
// alpha*observation + (1-alpha)*previous.
inline double ema_update(std::optional<double> previous, double observation, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha(alpha);
    if (!previous) return observation;
    return alpha * observation + (1.0 - alpha) * *previous;
}

// Exponential average of a short window of set differentials, folded oldest
// to newest. Empty history reads as neutral form 0.
inline double compute_form(std::span<const double> set_diffs, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha(alpha);
    std::optional<double> acc;
    for (double d : set_diffs) acc = ema_update(acc, d, alpha);
    return acc.value_or(0.0);
}

// Days since the previous match, capped at 7. A team with no previous match
// (or a long layoff) counts as fully rested.
inline double rest_days(std::optional<Date> last_date, Date match_date) {
    if (!last_date) return 7.0;
    const long d = days_between(*last_date, match_date);
    if (d < 0) {
        throw NegativeInterval("match on " + format_date(match_date) +
                               " predates the team's previous match on " +
                               format_date(*last_date));
    }
    return d > 7 ? 7.0 : double(d);
}

inline int match_importance(Stage stage) {
    switch (stage) {
        case Stage::League: return 0;
        case Stage::QuarterFinal: return 1;
        case Stage::SemiFinal: return 2;
        case Stage::Final: return 3;
    }
    return 0;
}

namespace detail {

inline constexpr std::size_t kFormWindow = 5;

struct TeamState {
    int matches_played = 0;
    int wins = 0;
    std::optional<double> ema_points_scored;
    std::optional<double> ema_points_conceded;
    std::vector<double> recent_set_diffs;  // oldest first, at most 5
    std::vector<double> home_set_diffs;
    std::vector<double> away_set_diffs;
    int current_rank = 0;      // 0 = never ranked; emitted as the sentinel
    int prev_season_rank = 0;  // 0 = no previous season; emitted as sentinel
    std::optional<Date> last_match_date;
    double last_game_performance = 0.0;

    double win_percentage() const {
        return matches_played == 0 ? 0.0 : 100.0 * wins / matches_played;
    }
};

inline void push_window(std::vector<double>& window, double value) {
    window.push_back(value);
    if (window.size() > kFormWindow) window.erase(window.begin());
}

// EMA of set differential per unordered team pair, stored from the
// lexicographically smaller team's perspective (making the pair view
// antisymmetric by construction).
class HeadToHeadState {
  public:
    double query(const std::string& a, const std::string& b) const {
        const bool flip = b < a;
        auto it = values_.find(key(a, b));
        if (it == values_.end() || !it->second) return 0.0;
        return flip ? -*it->second : *it->second;
    }

    void update(const std::string& a, const std::string& b, double diff_from_a,
                double alpha) {
        const bool flip = b < a;
        auto& slot = values_[key(a, b)];
        slot = ema_update(slot, flip ? -diff_from_a : diff_from_a, alpha);
    }

  private:
    static std::pair<std::string, std::string> key(const std::string& a,
                                                   const std::string& b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    std::map<std::pair<std::string, std::string>, std::optional<double>> values_;
};

struct SeasonRecord {
    int wins = 0;
    int set_diff = 0;
};

}  // namespace detail

inline constexpr double kDefaultAlpha = 0.2;

// `n_teams` drives the "unranked" sentinel (n_teams + 1). When 0 it is taken
// from the distinct team count of the input; pass it explicitly to reproduce
// a full run's vectors from a prefix of the stream.
inline std::vector<FeatureVector> build_features(const std::vector<RawMatch>& matches,
                                                 double alpha = kDefaultAlpha,
                                                 int n_teams = 0) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha(alpha);
    for (std::size_t i = 1; i < matches.size(); ++i) {
        if (matches[i].date < matches[i - 1].date) {
            throw DataError("matches must be sorted ascending by date");
        }
    }
    if (n_teams == 0) {
        std::set<std::string> roster;
        for (const auto& m : matches) {
            roster.insert(m.home_team);
            roster.insert(m.away_team);
        }
        n_teams = int(roster.size());
    }
    const double sentinel_rank = n_teams + 1;

    std::map<std::string, detail::TeamState> teams;
    detail::HeadToHeadState h2h;
    std::map<std::string, detail::SeasonRecord> standings;
    std::string current_season;

    std::vector<FeatureVector> out;
    out.reserve(matches.size());

    for (const auto& m : matches) {
        m.validate();

        if (m.season != current_season) {
            if (!current_season.empty()) {
                for (auto& [_, st] : teams) {
                    if (st.current_rank != 0) st.prev_season_rank = st.current_rank;
                    st.recent_set_diffs.clear();
                    st.home_set_diffs.clear();
                    st.away_set_diffs.clear();
                    st.last_match_date.reset();
                }
                standings.clear();
            }
            current_season = m.season;
        }

        detail::TeamState& home = teams[m.home_team];
        detail::TeamState& away = teams[m.away_team];

        FeatureVector fv;
        fv.match_id = m.match_id;
        auto rank_or_sentinel = [&](int r) { return r == 0 ? sentinel_rank : double(r); };

        fv.values[feat::kAwayCurrentPosition] = rank_or_sentinel(away.current_rank);
        fv.values[feat::kAwayPrevSeasonPosition] = rank_or_sentinel(away.prev_season_rank);
        fv.values[feat::kAwayPrevGamePerformance] = away.last_game_performance;
        fv.values[feat::kAwayAvgPoints] = away.ema_points_scored.value_or(0.0);
        fv.values[feat::kAwayAvgPointsConceded] = away.ema_points_conceded.value_or(0.0);
        fv.values[feat::kAwayAwayForm] = compute_form(away.away_set_diffs, alpha);
        fv.values[feat::kAwayForm] = compute_form(away.recent_set_diffs, alpha);
        fv.values[feat::kAwayWinPercentage] = away.win_percentage();
        fv.values[feat::kHeadToHeadForm] = h2h.query(m.home_team, m.away_team);
        fv.values[feat::kHomeCurrentPosition] = rank_or_sentinel(home.current_rank);
        fv.values[feat::kHomePrevSeasonPosition] = rank_or_sentinel(home.prev_season_rank);
        fv.values[feat::kHomePrevGamePerformance] = home.last_game_performance;
        fv.values[feat::kHomeAvgPoints] = home.ema_points_scored.value_or(0.0);
        fv.values[feat::kHomeAvgPointsConceded] = home.ema_points_conceded.value_or(0.0);
        fv.values[feat::kHomeForm] = compute_form(home.recent_set_diffs, alpha);
        fv.values[feat::kHomeHomeForm] = compute_form(home.home_set_diffs, alpha);
        fv.values[feat::kHomeRestTime] = rest_days(home.last_match_date, m.date);
        fv.values[feat::kHomeWinPercentage] = home.win_percentage();
        fv.values[feat::kMatchImportance] = match_importance(m.stage);
        fv.label = m.home_won() ? 1 : 0;
        out.push_back(std::move(fv));

        // Fold the outcome into both teams' state.
        const double diff = m.set_diff();
        home.matches_played += 1;
        home.wins += m.home_won() ? 1 : 0;
        home.ema_points_scored = ema_update(home.ema_points_scored, m.home_points, alpha);
        home.ema_points_conceded = ema_update(home.ema_points_conceded, m.away_points, alpha);
        detail::push_window(home.recent_set_diffs, diff);
        detail::push_window(home.home_set_diffs, diff);
        home.last_match_date = m.date;
        home.last_game_performance = diff;

        away.matches_played += 1;
        away.wins += m.home_won() ? 0 : 1;
        away.ema_points_scored = ema_update(away.ema_points_scored, m.away_points, alpha);
        away.ema_points_conceded = ema_update(away.ema_points_conceded, m.home_points, alpha);
        detail::push_window(away.recent_set_diffs, -diff);
        detail::push_window(away.away_set_diffs, -diff);
        away.last_match_date = m.date;
        away.last_game_performance = -diff;

        h2h.update(m.home_team, m.away_team, diff, alpha);

        auto& hrec = standings[m.home_team];
        auto& arec = standings[m.away_team];
        hrec.wins += m.home_won() ? 1 : 0;
        arec.wins += m.home_won() ? 0 : 1;
        hrec.set_diff += int(diff);
        arec.set_diff -= int(diff);

        // Re-rank the season table: wins, then cumulative set differential,
        // then name. Teams yet to play this season keep their carried rank.
        std::vector<std::pair<std::string, detail::SeasonRecord>> table(standings.begin(),
                                                                        standings.end());
        std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) {
            if (a.second.wins != b.second.wins) return a.second.wins > b.second.wins;
            if (a.second.set_diff != b.second.set_diff)
                return a.second.set_diff > b.second.set_diff;
            return a.first < b.first;
        });
        for (std::size_t r = 0; r < table.size(); ++r) {
            teams[table[r].first].current_rank = int(r) + 1;
        }
    }
    return out;
}

}  // namespace sideout
