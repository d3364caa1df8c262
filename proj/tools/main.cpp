// Command line front end.
//
//   sideout synth   --teams 12 --seasons 3 --seed 7 --out matches.csv
//   sideout run     --input matches.csv --outdir out
//   sideout explain --outdir out --match-id m00412 --method shap
//
// Exit codes: 0 ok, 2 config error, 3 data error, 4 training error,
// 5 lookup error.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sideout/sideout.hpp"

namespace {

using namespace sideout;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const DataError*>(&e)) return 3;
    if (dynamic_cast<const TrainingError*>(&e)) return 4;
    if (dynamic_cast<const LookupError*>(&e)) return 5;
    return 1;
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path);
    if (!f) throw DataError("cannot write '" + path.string() + "'");
    f << contents;
}

int cmd_synth(const LeagueConfig& cfg, const std::string& out_path) {
    auto matches = generate_synthetic_league(cfg);
    std::ostringstream ss;
    write_matches_csv(ss, matches);
    write_text(out_path, ss.str());
    std::cout << "wrote " << matches.size() << " matches to " << out_path << "\n";
    return 0;
}

int cmd_run(const RunConfig& cfg) {
    std::vector<std::string> written;
    try {
        RunArtifacts art = run_pipeline(cfg);
        written = write_run_outputs(cfg, art);

        std::cout << render_metrics_table(art.reports);
        std::cout << "majority-class baseline accuracy: ";
        std::printf("%.4f\n\n", art.majority_baseline);

        for (const auto& m : art.models) {
            if (m.kind == ModelKind::Brcg) {
                const auto& rules = std::get<BrcgParams>(m.params).rules;
                std::cout << "BRCG rule: " << rules.to_string(m.feature_names) << "\n\n";
            }
        }
        for (const auto& m : art.models) {
            if (m.kind == ModelKind::LogReg) {
                std::cout << "Logistic regression feature importance (|weight|, "
                             "standardized scale):\n";
                int rank = 1;
                for (const auto& [name, w] : logreg_feature_importance(m)) {
                    std::printf("  %2d. %-28s %.4f\n", rank++, name.c_str(), w);
                }
            }
        }
        std::cout << "\nartifacts written to " << cfg.outdir << "\n";
        return 0;
    } catch (...) {
        for (const auto& f : written) {
            std::error_code ec;
            std::filesystem::remove(f, ec);
        }
        throw;
    }
}

struct ExplainOptions {
    std::string outdir = "out";
    std::string match_id;
    bool all = false;
    std::string method = "shap";
    std::string model = "svm";
    int n_coalitions = 2048;
    int prototypes = 5;
    double gamma = 0.0;  // 0 -> 1/19
    std::vector<int> exact_features;
};

nlohmann::json explain_one(const ExplainSession& session, const ExplainOptions& opt,
                           const std::string& match_id, double* faithfulness_out) {
    if (opt.method == "protodash") {
        PrototypeResult res = explain_protodash(session, match_id, opt.prototypes, opt.gamma);
        nlohmann::json j = prototype_to_json(res, session.match_meta);
        if (!res.prototypes.empty() && res.prototypes[0].weight > 0.5) {
            j["dominant_first_prototype"] = true;
        }
        return j;
    }
    Attribution attr;
    if (opt.method == "shap") {
        attr = explain_kernel_shap(session, match_id, opt.n_coalitions);
    } else {  // shap-exact
        attr = explain_exact_shap(session, match_id, opt.exact_features);
    }
    auto fn = session.model_fn();
    const std::size_t idx = session.test_index(match_id);
    const auto fr = faithfulness(fn, session.test.row(idx), attr.phi, session.baseline);
    if (faithfulness_out) *faithfulness_out = fr.value;
    return attribution_to_json(attr, fr.value);
}

int cmd_explain(const ExplainOptions& opt) {
    if (opt.method != "shap" && opt.method != "shap-exact" && opt.method != "protodash") {
        throw InvalidConfig("method must be shap, shap-exact or protodash");
    }
    if (opt.method == "shap-exact" && opt.exact_features.empty()) {
        throw InvalidConfig(
            "shap-exact is exponential in the feature count; pass --features with "
            "at most 12 feature indices to bound the work");
    }
    if (!opt.all && opt.match_id.empty()) {
        throw InvalidConfig("pass --match-id or --all");
    }

    ExplainSession session = load_explain_session(opt.outdir, parse_model_kind(opt.model));
    const std::filesystem::path expl_dir =
        std::filesystem::path(opt.outdir) / "explanations";
    std::filesystem::create_directories(expl_dir);

    std::vector<std::string> targets;
    if (opt.all) targets = session.test.ids;
    else targets.push_back(opt.match_id);

    double faith_sum = 0.0;
    std::size_t faith_n = 0;
    for (const auto& id : targets) {
        double faith = 0.0;
        nlohmann::json j = explain_one(session, opt, id, &faith);
        const auto path = expl_dir / (id + "." + opt.method + ".json");
        write_text(path, j.dump(2) + "\n");
        if (opt.method != "protodash") {
            faith_sum += faith;
            ++faith_n;
            if (!opt.all) {
                std::printf("%s: predicted %.2f, base %.2f, faithfulness %.4f\n", id.c_str(),
                            j["predicted"].get<double>(), j["base_value"].get<double>(), faith);
            }
        } else if (!opt.all) {
            std::cout << "prototypes for " << id << ":\n";
            for (const auto& p : j["prototypes"]) {
                std::printf("  %-10s weight %.6f\n", p["match_id"].get<std::string>().c_str(),
                            p["weight"].get<double>());
            }
        }
    }
    if (faith_n > 0 && opt.all) {
        const double mean = faith_sum / double(faith_n);
        std::printf("mean faithfulness over %zu test matches: %.4f (scale -1 to +1)\n",
                    faith_n, mean);
        nlohmann::json j{{"model", opt.model},
                         {"method", opt.method},
                         {"n_matches", faith_n},
                         {"mean_faithfulness", mean}};
        write_text(std::filesystem::path(opt.outdir) / "reports" / "faithfulness.json",
                   j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explainable volleyball match outcome prediction"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file (flags win)");

    LeagueConfig league;
    std::string synth_out = "matches.csv";
    auto* synth = app.add_subcommand("synth", "generate a synthetic league CSV");
    synth->add_option("--teams", league.n_teams, "number of teams (>= 4)");
    synth->add_option("--seasons", league.n_seasons, "number of seasons (>= 1)");
    synth->add_option("--home-advantage", league.home_advantage,
                      "latent strength bonus for the home side");
    synth->add_option("--spread", league.strength_spread, "std-dev of team strengths (> 0)");
    synth->add_option("--drift", league.drift, "per-season strength perturbation (>= 0)");
    synth->add_option("--seed", league.seed, "root seed");
    synth->add_option("--out", synth_out, "output CSV path");

    RunConfig run_cfg;
    auto* run = app.add_subcommand("run", "featurize, train all five models, evaluate");
    run->add_option("--input", run_cfg.matches_csv, "match CSV to ingest");
    run->add_option("--features", run_cfg.features_csv,
                    "pre-computed feature CSV (skips feature engineering)");
    run->add_option("--outdir", run_cfg.outdir, "output directory");
    run->add_option("--alpha", run_cfg.alpha, "EMA smoothing factor in (0,1]");
    run->add_option("--test-fraction", run_cfg.test_fraction, "chronological test share");
    run->add_option("--threshold", run_cfg.threshold, "classification threshold");
    run->add_option("--seed", run_cfg.seed, "root seed");
    run->add_option("--background-size", run_cfg.background_size,
                    "training rows sampled as the SHAP background set");
    run->add_option("--logreg-l2", run_cfg.logreg.l2, "logreg L2 strength");
    run->add_option("--logreg-tol", run_cfg.logreg.tol, "logreg gradient tolerance");
    run->add_option("--svm-c", run_cfg.svm.c, "SVM hinge weight");
    run->add_option("--svm-epochs", run_cfg.svm.epochs, "SVM epochs");
    run->add_option("--mlp-hidden", run_cfg.mlp.hidden, "MLP hidden units");
    run->add_option("--mlp-lr", run_cfg.mlp.lr, "MLP learning rate");
    run->add_option("--mlp-epochs", run_cfg.mlp.epochs, "MLP epochs");
    run->add_option("--brcg-beam", run_cfg.brcg.beam_width, "rule beam width");
    run->add_option("--brcg-max-literals", run_cfg.brcg.max_clause_len,
                    "max literals per clause");
    run->add_option("--brcg-max-clauses", run_cfg.brcg.max_clauses, "max clauses");
    run->add_option("--brcg-lambda", run_cfg.brcg.lambda_complexity, "per-literal penalty");

    ExplainOptions expl;
    auto* explain = app.add_subcommand("explain", "post-hoc explanations for test matches");
    explain->add_option("--outdir", expl.outdir, "directory written by `run`");
    explain->add_option("--match-id", expl.match_id, "test match to explain");
    explain->add_flag("--all", expl.all, "explain every test match and report the mean faithfulness");
    explain->add_option("--method", expl.method, "shap | shap-exact | protodash");
    explain->add_option("--model", expl.model, "logreg | brcg | svm | mlp | lda");
    explain->add_option("--coalitions", expl.n_coalitions, "sampled coalitions for shap");
    explain->add_option("--prototypes", expl.prototypes, "prototype count for protodash");
    explain->add_option("--gamma", expl.gamma, "RBF width (default 1/19)");
    explain->add_option("--features", expl.exact_features,
                        "feature indices for shap-exact (budget guard, <= 12)")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(league, synth_out);
        if (run->parsed()) return cmd_run(run_cfg);
        if (explain->parsed()) return cmd_explain(expl);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
