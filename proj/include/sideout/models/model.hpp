// A trained classifier behind one probability-of-home-win interface, with a
// versioned JSON serialization. Standardization captured at train time is
// applied inside predict_proba; the rule learner is the exception and sees
// raw features.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sideout/dataset.hpp"
#include "sideout/models/brcg.hpp"

namespace sideout {

enum class ModelKind { LogReg, Brcg, LinearSvm, Mlp, Lda };

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::LogReg: return "logreg";
        case ModelKind::Brcg: return "brcg";
        case ModelKind::LinearSvm: return "svm";
        case ModelKind::Mlp: return "mlp";
        case ModelKind::Lda: return "lda";
    }
    return "?";
}

inline ModelKind parse_model_kind(const std::string& s) {
    if (s == "logreg") return ModelKind::LogReg;
    if (s == "brcg") return ModelKind::Brcg;
    if (s == "svm") return ModelKind::LinearSvm;
    if (s == "mlp") return ModelKind::Mlp;
    if (s == "lda") return ModelKind::Lda;
    throw MissingModel("unknown model kind '" + s + "'");
}

// Table-1 style display metadata.
inline const char* display_name(ModelKind k) {
    switch (k) {
        case ModelKind::LogReg: return "Logistic Regression";
        case ModelKind::Brcg: return "BRCG";
        case ModelKind::LinearSvm: return "SVM";
        case ModelKind::Mlp: return "Artificial Neural Network";
        case ModelKind::Lda: return "LinearDiscriminantAnalysis";
    }
    return "?";
}

inline const char* model_type(ModelKind k) {
    switch (k) {
        case ModelKind::LogReg:
        case ModelKind::Brcg: return "White-box";
        default: return "Black-box";
    }
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct LinearParams {
    std::vector<double> weights;
    double bias = 0.0;
    bool converged = true;
};

struct SvmParams {
    std::vector<double> weights;
    double bias = 0.0;
    double platt_a = 1.0;
    double platt_b = 0.0;

    double margin(std::span<const double> z) const {
        double m = bias;
        for (std::size_t j = 0; j < weights.size(); ++j) m += weights[j] * z[j];
        return m;
    }
};

struct MlpParams {
    int hidden = 0;
    std::vector<double> w1;  // hidden x d, row-major
    std::vector<double> b1;  // hidden
    std::vector<double> w2;  // hidden
    double b2 = 0.0;

    double forward(std::span<const double> z) const {
        const std::size_t d = z.size();
        double out = b2;
        for (int h = 0; h < hidden; ++h) {
            double a = b1[h];
            for (std::size_t j = 0; j < d; ++j) a += w1[h * d + j] * z[j];
            out += w2[h] * std::tanh(a);
        }
        return sigmoid(out);
    }
};

struct BrcgParams {
    RuleSet rules;
};

struct TrainedModel {
    ModelKind kind = ModelKind::LogReg;
    Standardizer standardizer;
    bool standardized_inputs = true;  // false for the rule learner
    std::variant<LinearParams, SvmParams, MlpParams, BrcgParams> params;
    std::vector<std::string> feature_names;
    std::string fingerprint;  // hash of the training slice
    nlohmann::json hyperparams;

    std::size_t dim() const { return feature_names.size(); }

    double predict_proba(std::span<const double> raw_row) const {
        if (raw_row.size() != dim()) {
            throw NonFiniteInput("feature row has wrong length: " +
                                 std::to_string(raw_row.size()));
        }
        for (double v : raw_row) {
            if (!std::isfinite(v)) throw NonFiniteInput("non-finite feature value");
        }
        if (kind == ModelKind::Brcg) {
            return std::get<BrcgParams>(params).rules.proba(raw_row);
        }
        const std::vector<double> z = standardized_inputs ? standardizer.apply(raw_row)
                                                          : std::vector<double>(raw_row.begin(),
                                                                                raw_row.end());
        switch (kind) {
            case ModelKind::LogReg:
            case ModelKind::Lda: {
                const auto& p = std::get<LinearParams>(params);
                double s = p.bias;
                for (std::size_t j = 0; j < p.weights.size(); ++j) s += p.weights[j] * z[j];
                return sigmoid(s);
            }
            case ModelKind::LinearSvm: {
                const auto& p = std::get<SvmParams>(params);
                return sigmoid(p.platt_a * p.margin(z) + p.platt_b);
            }
            case ModelKind::Mlp:
                return std::get<MlpParams>(params).forward(z);
            default:
                break;
        }
        throw WrongModelKind("unhandled model kind");
    }
};

// FNV-1a over the training matrix bytes; identifies the exact training slice.
inline std::string dataset_fingerprint(const Dataset& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](const void* p, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    mix(data.x.data(), data.x.size() * sizeof(double));
    mix(data.y.data(), data.y.size() * sizeof(int));
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline TrainedModel train_brcg_model(const Dataset& train, const BrcgConfig& cfg = {}) {
    TrainedModel model;
    model.kind = ModelKind::Brcg;
    model.standardizer = Standardizer::fit(train);  // kept for reporting scales
    model.standardized_inputs = false;
    model.feature_names = train.feature_names;
    model.fingerprint = dataset_fingerprint(train);
    model.hyperparams = {{"beam_width", cfg.beam_width},
                         {"max_clause_len", cfg.max_clause_len},
                         {"max_clauses", cfg.max_clauses},
                         {"lambda_complexity", cfg.lambda_complexity}};
    model.params = BrcgParams{train_brcg(train, cfg)};
    return model;
}

inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline nlohmann::json clause_to_json(const Clause& c) {
    nlohmann::json j;
    if (c.literals.size() == 1 && c.literals[0].unsatisfiable()) {
        j["unsatisfiable"] = true;
    } else {
        auto lits = nlohmann::json::array();
        for (const auto& lit : c.literals) {
            lits.push_back({{"feature", lit.feature},
                            {"greater", lit.greater},
                            {"threshold", lit.threshold}});
        }
        j["literals"] = lits;
    }
    j["precision"] = c.precision;
    j["tp"] = c.tp;
    j["fp"] = c.fp;
    return j;
}

inline Clause clause_from_json(const nlohmann::json& j) {
    Clause c;
    if (j.value("unsatisfiable", false)) {
        c.literals.push_back({0, true, std::numeric_limits<double>::infinity()});
    } else {
        for (const auto& lj : j.at("literals")) {
            c.literals.push_back({lj.at("feature").get<int>(), lj.at("greater").get<bool>(),
                                  lj.at("threshold").get<double>()});
        }
    }
    c.precision = j.at("precision").get<double>();
    c.tp = j.value("tp", 0);
    c.fp = j.value("fp", 0);
    return c;
}

}  // namespace detail

inline nlohmann::json model_to_json(const TrainedModel& m) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = to_string(m.kind);
    j["feature_names"] = m.feature_names;
    j["standardized_inputs"] = m.standardized_inputs;
    j["standardization"] = {{"mean", m.standardizer.mean},
                            {"std", m.standardizer.stddev},
                            {"constant", m.standardizer.constant}};
    j["hyperparams"] = m.hyperparams;
    j["training_fingerprint"] = m.fingerprint;

    nlohmann::json p;
    switch (m.kind) {
        case ModelKind::LogReg:
        case ModelKind::Lda: {
            const auto& lp = std::get<LinearParams>(m.params);
            p = {{"weights", lp.weights}, {"bias", lp.bias}, {"converged", lp.converged}};
            break;
        }
        case ModelKind::LinearSvm: {
            const auto& sp = std::get<SvmParams>(m.params);
            p = {{"weights", sp.weights},
                 {"bias", sp.bias},
                 {"platt_a", sp.platt_a},
                 {"platt_b", sp.platt_b}};
            break;
        }
        case ModelKind::Mlp: {
            const auto& mp = std::get<MlpParams>(m.params);
            p = {{"hidden", mp.hidden},
                 {"w1", mp.w1},
                 {"b1", mp.b1},
                 {"w2", mp.w2},
                 {"b2", mp.b2}};
            break;
        }
        case ModelKind::Brcg: {
            const auto& bp = std::get<BrcgParams>(m.params);
            auto clauses = nlohmann::json::array();
            for (const auto& c : bp.rules.clauses) clauses.push_back(detail::clause_to_json(c));
            p = {{"clauses", clauses}, {"fallback_rate", bp.rules.fallback_rate}};
            break;
        }
    }
    j["params"] = p;
    return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j) {
    if (j.value("format_version", 0) != kModelFormatVersion) {
        throw MissingModel("unsupported model format version");
    }
    TrainedModel m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.standardized_inputs = j.at("standardized_inputs").get<bool>();
    const auto& s = j.at("standardization");
    m.standardizer.mean = s.at("mean").get<std::vector<double>>();
    m.standardizer.stddev = s.at("std").get<std::vector<double>>();
    m.standardizer.constant = s.at("constant").get<std::vector<std::uint8_t>>();
    m.hyperparams = j.value("hyperparams", nlohmann::json::object());
    m.fingerprint = j.value("training_fingerprint", "");

    const auto& p = j.at("params");
    switch (m.kind) {
        case ModelKind::LogReg:
        case ModelKind::Lda: {
            LinearParams lp;
            lp.weights = p.at("weights").get<std::vector<double>>();
            lp.bias = p.at("bias").get<double>();
            lp.converged = p.value("converged", true);
            m.params = std::move(lp);
            break;
        }
        case ModelKind::LinearSvm: {
            SvmParams sp;
            sp.weights = p.at("weights").get<std::vector<double>>();
            sp.bias = p.at("bias").get<double>();
            sp.platt_a = p.at("platt_a").get<double>();
            sp.platt_b = p.at("platt_b").get<double>();
            m.params = std::move(sp);
            break;
        }
        case ModelKind::Mlp: {
            MlpParams mp;
            mp.hidden = p.at("hidden").get<int>();
            mp.w1 = p.at("w1").get<std::vector<double>>();
            mp.b1 = p.at("b1").get<std::vector<double>>();
            mp.w2 = p.at("w2").get<std::vector<double>>();
            mp.b2 = p.at("b2").get<double>();
            m.params = std::move(mp);
            break;
        }
        case ModelKind::Brcg: {
            BrcgParams bp;
            for (const auto& cj : p.at("clauses")) {
                bp.rules.clauses.push_back(detail::clause_from_json(cj));
            }
            bp.rules.fallback_rate = p.at("fallback_rate").get<double>();
            m.params = std::move(bp);
            break;
        }
    }
    return m;
}

}  // namespace sideout
