// End-to-end orchestration: ingest or synthesize matches, featurize, split
// chronologically, train the five classifiers, evaluate, and load artifacts
// back for post-hoc explanation. File layout under the output directory:
//   data/          matches.csv, features.csv
//   models/        <kind>.json
//   reports/       metrics.txt, metrics.json, run_manifest.json
//   explanations/  <match_id>.<method>.json
#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sideout/csv.hpp"
#include "sideout/dataset.hpp"
#include "sideout/explain/kernel_shap.hpp"
#include "sideout/explain/protodash.hpp"
#include "sideout/explain/shapley.hpp"
#include "sideout/features.hpp"
#include "sideout/metrics.hpp"
#include "sideout/models/lda.hpp"
#include "sideout/models/logreg.hpp"
#include "sideout/models/mlp.hpp"
#include "sideout/models/svm.hpp"
#include "sideout/rng.hpp"
#include "sideout/split.hpp"
#include "sideout/synth.hpp"

namespace sideout {

struct RunConfig {
    std::string matches_csv;   // exactly one of matches_csv / features_csv
    std::string features_csv;
    std::string outdir = "out";
    double alpha = kDefaultAlpha;
    double test_fraction = 0.2;
    double threshold = 0.5;
    std::uint64_t seed = 42;
    int background_size = 50;
    LogRegConfig logreg;
    BrcgConfig brcg;
    SvmConfig svm;
    MlpConfig mlp;
};

struct RunArtifacts {
    std::vector<RawMatch> matches;  // empty when the input was a feature CSV
    std::vector<FeatureVector> features;
    Dataset train;
    Dataset test;
    std::vector<TrainedModel> models;  // logreg, brcg, svm, mlp, lda
    std::vector<MetricsReport> reports;
    std::vector<std::size_t> background;  // train row indices
    double majority_baseline = 0.0;
};

namespace detail {

inline std::vector<std::size_t> sample_background(std::size_t n_train, int size,
                                                  std::uint64_t seed) {
    std::vector<std::size_t> idx(n_train);
    for (std::size_t i = 0; i < n_train; ++i) idx[i] = i;
    if (std::size_t(size) >= n_train) return idx;
    Rng rng(seed);
    for (int pick = 0; pick < size; ++pick) {
        const std::size_t j = pick + rng.next_below(n_train - pick);
        std::swap(idx[pick], idx[j]);
    }
    idx.resize(size);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace detail

inline RunArtifacts run_pipeline(const RunConfig& cfg) {
    if (cfg.matches_csv.empty() == cfg.features_csv.empty()) {
        throw InvalidConfig("exactly one of a match CSV or a feature CSV must be given");
    }

    RunArtifacts art;
    if (!cfg.matches_csv.empty()) {
        art.matches = parse_matches_csv(cfg.matches_csv);
        art.features = build_features(art.matches, cfg.alpha);
    } else {
        art.features = read_features_csv(cfg.features_csv);
    }
    if (art.features.empty()) throw EmptyDataset("no feature rows to train on");

    auto [train_rows, test_rows] = chronological_split(art.features, cfg.test_fraction);
    art.train = Dataset::from_features(train_rows);
    art.test = Dataset::from_features(test_rows);

    SvmConfig svm_cfg = cfg.svm;
    svm_cfg.seed = derive_seed(cfg.seed, "svm");
    MlpConfig mlp_cfg = cfg.mlp;
    mlp_cfg.seed = derive_seed(cfg.seed, "mlp");

    art.models.push_back(train_logreg(art.train, cfg.logreg));
    art.models.push_back(train_brcg_model(art.train, cfg.brcg));
    art.models.push_back(train_svm(art.train, svm_cfg));
    art.models.push_back(train_mlp(art.train, mlp_cfg));
    art.models.push_back(train_lda(art.train));

    for (const auto& m : art.models) {
        art.reports.push_back(evaluate_model(m, art.test, cfg.threshold));
    }
    art.majority_baseline = majority_baseline_accuracy(art.test.y);
    art.background = detail::sample_background(art.train.rows(), cfg.background_size,
                                               derive_seed(cfg.seed, "shap.background"));
    return art;
}

inline constexpr int kManifestFormatVersion = 1;

inline nlohmann::json run_manifest(const RunConfig& cfg, const RunArtifacts& art) {
    nlohmann::json j;
    j["format_version"] = kManifestFormatVersion;
    j["seed"] = cfg.seed;
    j["alpha"] = cfg.alpha;
    j["test_fraction"] = cfg.test_fraction;
    j["threshold"] = cfg.threshold;
    j["n_rows"] = art.features.size();
    j["n_train"] = art.train.rows();
    j["n_test"] = art.test.rows();
    j["test_ids"] = art.test.ids;
    j["background_indices"] = art.background;
    j["majority_baseline_accuracy"] = art.majority_baseline;
    j["models"] = nlohmann::json::array();
    for (const auto& m : art.models) j["models"].push_back(to_string(m.kind));
    return j;
}

// Writes every artifact of a run; returns the list of files written (used to
// clean up after a failed command).
inline std::vector<std::string> write_run_outputs(const RunConfig& cfg,
                                                  const RunArtifacts& art) {
    namespace fs = std::filesystem;
    const fs::path out(cfg.outdir);
    for (const char* sub : {"data", "models", "reports", "explanations"}) {
        fs::create_directories(out / sub);
    }
    std::vector<std::string> written;
    auto emit = [&](const fs::path& p, const std::string& contents) {
        std::ofstream f(p);
        if (!f) throw DataError("cannot write '" + p.string() + "'");
        f << contents;
        written.push_back(p.string());
    };

    if (!art.matches.empty()) {
        std::ostringstream ss;
        write_matches_csv(ss, art.matches);
        emit(out / "data" / "matches.csv", ss.str());
    }
    {
        std::ostringstream ss;
        write_features_csv(ss, art.features);
        emit(out / "data" / "features.csv", ss.str());
    }
    for (const auto& m : art.models) {
        emit(out / "models" / (std::string(to_string(m.kind)) + ".json"),
             model_to_json(m).dump(2) + "\n");
    }
    emit(out / "reports" / "metrics.txt", render_metrics_table(art.reports));
    emit(out / "reports" / "metrics.json", metrics_to_json(art.reports).dump(2) + "\n");
    emit(out / "reports" / "run_manifest.json", run_manifest(cfg, art).dump(2) + "\n");
    return written;
}

// ---------------------------------------------------------------------------
// Explanation session: artifacts of a finished run loaded back from disk.

struct ExplainSession {
    std::uint64_t seed = 0;
    double threshold = 0.5;
    std::vector<FeatureVector> features;
    Dataset train;
    Dataset test;
    std::vector<std::vector<double>> background_rows;  // raw feature rows
    std::vector<double> baseline;                      // background mean
    TrainedModel model;
    std::map<std::string, RawMatch> match_meta;  // present when matches.csv exists

    ModelFn model_fn() const {
        return [this](std::span<const double> row) { return model.predict_proba(row); };
    }

    // Index of a test match, or UnknownMatch.
    std::size_t test_index(const std::string& match_id) const {
        for (std::size_t i = 0; i < test.rows(); ++i) {
            if (test.ids[i] == match_id) return i;
        }
        throw UnknownMatch(match_id);
    }
};

inline ExplainSession load_explain_session(const std::string& outdir, ModelKind kind) {
    namespace fs = std::filesystem;
    const fs::path out(outdir);

    const fs::path manifest_path = out / "reports" / "run_manifest.json";
    std::ifstream mf(manifest_path);
    if (!mf) throw MissingModel("no run manifest at '" + manifest_path.string() + "'");
    nlohmann::json manifest = nlohmann::json::parse(mf);
    if (manifest.value("format_version", 0) != kManifestFormatVersion) {
        throw MissingModel("unsupported manifest format version");
    }

    ExplainSession s;
    s.seed = manifest.at("seed").get<std::uint64_t>();
    s.threshold = manifest.value("threshold", 0.5);
    s.features = read_features_csv((out / "data" / "features.csv").string());

    const auto n_train = manifest.at("n_train").get<std::size_t>();
    const auto n_test = manifest.at("n_test").get<std::size_t>();
    if (n_train + n_test != s.features.size()) {
        throw DataError("feature CSV does not match the run manifest row counts");
    }
    std::vector<FeatureVector> train_rows(s.features.begin(), s.features.begin() + n_train);
    std::vector<FeatureVector> test_rows(s.features.begin() + n_train, s.features.end());
    s.train = Dataset::from_features(train_rows);
    s.test = Dataset::from_features(test_rows);

    for (const auto idx : manifest.at("background_indices").get<std::vector<std::size_t>>()) {
        if (idx >= s.train.rows()) throw DataError("background index out of range");
        s.background_rows.push_back(s.train.row_copy(idx));
    }
    if (s.background_rows.empty()) throw EmptyBackground();
    s.baseline.assign(kNumFeatures, 0.0);
    for (const auto& row : s.background_rows) {
        for (int j = 0; j < kNumFeatures; ++j) s.baseline[j] += row[j];
    }
    for (auto& v : s.baseline) v /= double(s.background_rows.size());

    const fs::path model_path = out / "models" / (std::string(to_string(kind)) + ".json");
    std::ifstream mdl(model_path);
    if (!mdl) throw MissingModel("no trained model at '" + model_path.string() + "'");
    s.model = model_from_json(nlohmann::json::parse(mdl));

    const fs::path matches_path = out / "data" / "matches.csv";
    if (fs::exists(matches_path)) {
        for (auto& m : parse_matches_csv(matches_path.string())) {
            s.match_meta[m.match_id] = m;
        }
    }
    return s;
}

inline Attribution explain_kernel_shap(const ExplainSession& s, const std::string& match_id,
                                       int n_coalitions) {
    const std::size_t i = s.test_index(match_id);
    auto fn = s.model_fn();
    Attribution attr = kernel_shap(fn, s.test.row(i), s.background_rows, n_coalitions,
                                   derive_seed(s.seed, "shap:" + match_id));
    attr.match_id = match_id;
    return attr;
}

// Exact Shapley over an explicit feature subset (the coalition game is
// played on those features; the rest stay fixed at the explained row).
inline Attribution explain_exact_shap(const ExplainSession& s, const std::string& match_id,
                                      const std::vector<int>& feature_subset,
                                      std::uint64_t budget = kDefaultShapleyBudget) {
    if (feature_subset.empty() || feature_subset.size() > 12) {
        throw InvalidConfig("exact SHAP needs a reduced feature subset of 1..12 features");
    }
    for (int f : feature_subset) {
        if (f < 0 || f >= kNumFeatures) {
            throw InvalidConfig("feature index out of range: " + std::to_string(f));
        }
    }
    const std::size_t i = s.test_index(match_id);
    const auto x_full = s.test.row_copy(i);

    std::vector<double> x_sub;
    std::vector<std::vector<double>> bg_sub;
    for (int f : feature_subset) x_sub.push_back(x_full[f]);
    for (const auto& b : s.background_rows) {
        std::vector<double> r;
        for (int f : feature_subset) r.push_back(b[f]);
        bg_sub.push_back(std::move(r));
    }

    auto fn = s.model_fn();
    ModelFn reduced = [&](std::span<const double> sub_row) {
        std::vector<double> row = x_full;
        for (std::size_t k = 0; k < feature_subset.size(); ++k) {
            row[feature_subset[k]] = sub_row[k];
        }
        return fn(row);
    };

    Attribution sub_attr = exact_shapley(reduced, x_sub, bg_sub, budget);
    Attribution attr;
    attr.match_id = match_id;
    attr.base_value = sub_attr.base_value;
    attr.predicted = sub_attr.predicted;
    attr.phi.assign(kNumFeatures, 0.0);
    for (std::size_t k = 0; k < feature_subset.size(); ++k) {
        attr.phi[feature_subset[k]] = sub_attr.phi[k];
    }
    return attr;
}

inline PrototypeResult explain_protodash(const ExplainSession& s, const std::string& match_id,
                                         int m, double gamma) {
    const std::size_t i = s.test_index(match_id);
    if (gamma <= 0) gamma = 1.0 / double(kNumFeatures);

    const Standardizer& std_tf = s.model.standardizer;
    std::vector<std::vector<double>> candidates(s.train.rows());
    for (std::size_t r = 0; r < s.train.rows(); ++r) {
        candidates[r] = std_tf.apply(s.train.row(r));
    }
    const std::vector<double> target = std_tf.apply(s.test.row(i));

    ProtoSelection sel = protodash(target, candidates, m, gamma);

    PrototypeResult res;
    res.target_id = match_id;
    for (std::size_t k = 0; k < sel.indices.size(); ++k) {
        PrototypeResult::Entry e;
        e.candidate_index = sel.indices[k];
        e.match_id = s.train.ids[sel.indices[k]];
        e.weight = sel.weights[k];
        e.similarity = feature_similarity(s.train.row(sel.indices[k]), s.test.row(i),
                                          std_tf.stddev, std_tf.constant);
        res.prototypes.push_back(std::move(e));
    }
    return res;
}

namespace detail {

inline double round6(double v) { return std::nearbyint(v * 1e6) / 1e6; }

}  // namespace detail

inline nlohmann::json attribution_to_json(const Attribution& attr,
                                          std::optional<double> faithfulness_score = {}) {
    nlohmann::json j;
    j["match_id"] = attr.match_id;
    j["base_value"] = detail::round6(attr.base_value);
    j["predicted"] = detail::round6(attr.predicted);
    nlohmann::json phi;
    for (int i = 0; i < kNumFeatures; ++i) {
        phi[kFeatureNames[i]] = detail::round6(attr.phi[i]);
    }
    j["phi"] = phi;
    if (faithfulness_score) j["faithfulness"] = detail::round6(*faithfulness_score);
    return j;
}

inline nlohmann::json prototype_to_json(const PrototypeResult& res,
                                        const std::map<std::string, RawMatch>& meta) {
    nlohmann::json j;
    j["match_id"] = res.target_id;
    auto protos = nlohmann::json::array();
    for (const auto& e : res.prototypes) {
        nlohmann::json p;
        p["match_id"] = e.match_id;
        p["weight"] = detail::round6(e.weight);
        nlohmann::json sim;
        for (int i = 0; i < kNumFeatures; ++i) sim[kFeatureNames[i]] = detail::round6(e.similarity[i]);
        p["similarity"] = sim;
        auto it = meta.find(e.match_id);
        if (it != meta.end()) {
            p["home_team"] = it->second.home_team;
            p["away_team"] = it->second.away_team;
            p["date"] = format_date(it->second.date);
        }
        protos.push_back(std::move(p));
    }
    j["prototypes"] = protos;
    return j;
}

}  // namespace sideout
