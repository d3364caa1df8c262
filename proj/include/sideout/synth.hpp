// Synthetic league generator: a double round-robin per season plus a playoff
// bracket among the top of the table, with outcomes drawn from latent team
// strengths. Deterministic given the seed.
#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "sideout/rng.hpp"
#include "sideout/types.hpp"

namespace sideout {

namespace detail {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct ScheduledMatch {
    int home, away;
    int round;  // 0-based league round
};

// Circle-method double round-robin. Each team meets every other twice,
// once at home and once away, one match per round (odd team counts get a
// bye per round).
inline std::vector<ScheduledMatch> round_robin_schedule(int n_teams) {
    int n = n_teams % 2 == 0 ? n_teams : n_teams + 1;  // last slot = bye
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;

    std::vector<ScheduledMatch> first_half;
    const int rounds = n - 1;
    for (int r = 0; r < rounds; ++r) {
        for (int k = 0; k < n / 2; ++k) {
            int a = idx[k];
            int b = idx[n - 1 - k];
            if (a >= n_teams || b >= n_teams) continue;  // bye
            // Alternate venue by round so home counts stay balanced.
            if (r % 2 == 0) first_half.push_back({a, b, r});
            else first_half.push_back({b, a, r});
        }
        // Rotate everything but the first slot.
        std::rotate(idx.begin() + 1, idx.end() - 1, idx.end());
    }
    std::vector<ScheduledMatch> all = first_half;
    for (const auto& m : first_half) all.push_back({m.away, m.home, m.round + rounds});
    return all;
}

struct TableEntry {
    std::string team;
    int wins = 0;
    int set_diff = 0;
};

inline void sort_table(std::vector<TableEntry>& table) {
    std::sort(table.begin(), table.end(), [](const TableEntry& a, const TableEntry& b) {
        if (a.wins != b.wins) return a.wins > b.wins;
        if (a.set_diff != b.set_diff) return a.set_diff > b.set_diff;
        return a.team < b.team;
    });
}

}  // namespace detail

struct SynthResult {
    std::vector<RawMatch> matches;
    // Latent strength of each team per season, for validation of the
    // strength/outcome relationship. Index: [season][team].
    std::vector<std::vector<double>> strengths;
    std::vector<std::string> team_names;
};

inline SynthResult generate_synthetic_league_detailed(const LeagueConfig& cfg) {
    cfg.validate();
    Rng rng(derive_seed(cfg.seed, "synth"));

    const int n = cfg.n_teams;
    std::vector<std::string> teams(n);
    for (int i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "Team%02d", i + 1);
        teams[i] = buf;
    }

    std::vector<double> strength(n);
    for (int i = 0; i < n; ++i) strength[i] = rng.next_normal(0.0, cfg.strength_spread);

    SynthResult result;
    result.team_names = teams;
    int match_counter = 0;

    // Winner takes 3 sets; the loser's set count follows the conditional
    // best-of-five distribution P(s) ~ C(2+s, s) q^3 (1-q)^s where q is the
    // winner's per-set win probability.
    auto play_match = [&](int home, int away, Date date, const std::string& season,
                          Stage stage) {
        const double eff_home = strength[home] + cfg.home_advantage;
        const double eff_away = strength[away];
        const bool home_wins = rng.next_double() < detail::sigmoid(eff_home - eff_away);

        const double q = detail::sigmoid(home_wins ? eff_home - eff_away : eff_away - eff_home);
        const double q3 = q * q * q;
        double p[3] = {q3, 3 * q3 * (1 - q), 6 * q3 * (1 - q) * (1 - q)};
        const double total = p[0] + p[1] + p[2];
        double u = rng.next_double() * total;
        int loser_sets = 0;
        for (; loser_sets < 2; ++loser_sets) {
            if (u < p[loser_sets]) break;
            u -= p[loser_sets];
        }

        const bool five_sets = loser_sets == 2;
        // Points: set winner reaches 25 (15 in a fifth set); the side losing
        // a set draws Uniform{15..23} (Uniform{9..13} in a fifth set).
        int winner_points = 0, loser_points = 0;
        winner_points += 25 * (3 - (five_sets ? 1 : 0)) + (five_sets ? 15 : 0);
        for (int s = 0; s < 3 - (five_sets ? 1 : 0); ++s) {
            loser_points += int(rng.next_in(15, 23));
        }
        if (five_sets) loser_points += int(rng.next_in(9, 13));
        loser_points += 25 * loser_sets;
        for (int s = 0; s < loser_sets; ++s) {
            winner_points += int(rng.next_in(15, 23));
        }

        RawMatch m;
        char id[16];
        std::snprintf(id, sizeof(id), "m%05d", ++match_counter);
        m.match_id = id;
        m.date = date;
        m.season = season;
        m.home_team = teams[home];
        m.away_team = teams[away];
        m.home_sets = home_wins ? 3 : loser_sets;
        m.away_sets = home_wins ? loser_sets : 3;
        m.home_points = home_wins ? winner_points : loser_points;
        m.away_points = home_wins ? loser_points : winner_points;
        m.stage = stage;
        result.matches.push_back(std::move(m));
        return home_wins;
    };

    Date season_start = make_date(2010, 10, 1);
    const auto schedule = detail::round_robin_schedule(n);

    for (int s = 0; s < cfg.n_seasons; ++s) {
        if (s > 0) {
            for (int i = 0; i < n; ++i) strength[i] += rng.next_normal(0.0, cfg.drift);
        }
        result.strengths.push_back(strength);

        char tag[24];
        std::snprintf(tag, sizeof(tag), "season-%02d", s + 1);
        const std::string season(tag);

        std::map<std::string, detail::TableEntry> standings;
        for (const auto& t : teams) standings[t] = {t, 0, 0};

        // League matches: rounds a week apart, matches within a round spread
        // over three days so rest gaps land on both sides of the cap.
        Date last_date = season_start;
        int slot_in_round = 0, current_round = -1;
        for (const auto& sm : schedule) {
            if (sm.round != current_round) {
                current_round = sm.round;
                slot_in_round = 0;
            }
            Date date = season_start + std::chrono::days(7 * sm.round + slot_in_round % 3);
            ++slot_in_round;
            bool home_wins = play_match(sm.home, sm.away, date, season, Stage::League);
            const RawMatch& m = result.matches.back();
            auto& h = standings[m.home_team];
            auto& a = standings[m.away_team];
            h.wins += home_wins ? 1 : 0;
            a.wins += home_wins ? 0 : 1;
            h.set_diff += m.set_diff();
            a.set_diff -= m.set_diff();
            if (date > last_date) last_date = date;
        }

        // Playoffs among the top of the table; with fewer than eight teams
        // the bracket starts at the semifinals.
        std::vector<detail::TableEntry> table;
        for (const auto& [_, e] : standings) table.push_back(e);
        detail::sort_table(table);

        auto team_index = [&](const std::string& name) {
            return int(std::find(teams.begin(), teams.end(), name) - teams.begin());
        };

        std::vector<int> seeds;  // team indices, best first
        const int bracket = n >= 8 ? 8 : 4;
        for (int i = 0; i < bracket; ++i) seeds.push_back(team_index(table[i].team));

        auto play_round = [&](const std::vector<int>& entrants, Date date, Stage stage) {
            // entrants are ordered by seed; pair best against worst.
            std::vector<int> winners;
            const int k = int(entrants.size());
            for (int i = 0; i < k / 2; ++i) {
                int hi = entrants[i], lo = entrants[k - 1 - i];
                bool home_wins = play_match(hi, lo, date, season, stage);
                winners.push_back(home_wins ? hi : lo);
            }
            // Keep seed order for the next round.
            std::sort(winners.begin(), winners.end(), [&](int a, int b) {
                return std::find(seeds.begin(), seeds.end(), a) <
                       std::find(seeds.begin(), seeds.end(), b);
            });
            return winners;
        };

        Date round_date = last_date + std::chrono::days(3);
        std::vector<int> alive = seeds;
        if (bracket == 8) {
            alive = play_round(alive, round_date, Stage::QuarterFinal);
            round_date += std::chrono::days(3);
        }
        alive = play_round(alive, round_date, Stage::SemiFinal);
        round_date += std::chrono::days(3);
        play_round(alive, round_date, Stage::Final);

        season_start = round_date + std::chrono::days(30);
    }

    std::stable_sort(result.matches.begin(), result.matches.end(),
                     [](const RawMatch& a, const RawMatch& b) {
                         if (a.date != b.date) return a.date < b.date;
                         return a.match_id < b.match_id;
                     });
    return result;
}

inline std::vector<RawMatch> generate_synthetic_league(const LeagueConfig& cfg) {
    return generate_synthetic_league_detailed(cfg).matches;
}

}  // namespace sideout
