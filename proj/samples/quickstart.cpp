// Minimal library walkthrough: synthesize a league, build features, train a
// model, evaluate it, and print the learned rule.
#include <cstdio>
#include <iostream>

#include "sideout/sideout.hpp"

int main() {
    using namespace sideout;

    LeagueConfig league;
    league.n_teams = 10;
    league.n_seasons = 3;
    league.seed = 7;
    auto matches = generate_synthetic_league(league);
    std::printf("generated %zu matches\n", matches.size());

    auto features = build_features(matches);
    auto [train_rows, test_rows] = chronological_split(features, 0.2);
    Dataset train = Dataset::from_features(train_rows);
    Dataset test = Dataset::from_features(test_rows);

    TrainedModel logreg = train_logreg(train);
    MetricsReport report = evaluate_model(logreg, test);
    std::printf("logreg: accuracy %.3f, F1 %.3f, AUC %.3f on %zu test matches\n",
                report.accuracy, report.f1, report.auc_roc, report.n_test);

    TrainedModel rules = train_brcg_model(train);
    std::cout << std::get<BrcgParams>(rules.params).rules.to_string(train.feature_names)
              << "\n";
    return 0;
}
