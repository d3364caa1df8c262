// DNF rule learner (OR of ANDs over threshold literals), trained by a greedy
// cover loop with beam search over conjunctions. Runs on unstandardized
// features so thresholds stay human-readable.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sideout/dataset.hpp"

namespace sideout {

struct Literal {
    int feature = 0;
    bool greater = false;  // true: x > threshold, false: x <= threshold
    double threshold = 0.0;

    bool satisfied(std::span<const double> row) const {
        return greater ? row[feature] > threshold : row[feature] <= threshold;
    }
    bool unsatisfiable() const {
        return greater && threshold == std::numeric_limits<double>::infinity();
    }
};

struct Clause {
    std::vector<Literal> literals;
    // Laplace-smoothed precision on the training rows this clause claimed.
    double precision = 0.0;
    int tp = 0;
    int fp = 0;

    bool satisfied(std::span<const double> row) const {
        for (const auto& lit : literals) {
            if (!lit.satisfied(row)) return false;
        }
        return true;
    }
};

// Predict 1 iff any clause is satisfied. A learner that accepted no clause
// is represented as a single unsatisfiable clause (predicts 0 everywhere).
struct RuleSet {
    std::vector<Clause> clauses;
    double fallback_rate = 0.5;  // smoothed positive rate of the uncovered region

    int predict(std::span<const double> row) const {
        for (const auto& c : clauses) {
            if (c.satisfied(row)) return 1;
        }
        return 0;
    }

    // Probability surrogate: precision of the first satisfied clause, else
    // the uncovered-region base rate.
    double proba(std::span<const double> row) const {
        for (const auto& c : clauses) {
            if (c.satisfied(row)) return c.precision;
        }
        return fallback_rate;
    }

    std::string to_string(const std::vector<std::string>& feature_names) const {
        std::string s = "Predict Y=1 if [";
        bool first_clause = true;
        for (const auto& c : clauses) {
            if (!first_clause) s += "] OR [";
            first_clause = false;
            if (c.literals.size() == 1 && c.literals[0].unsatisfiable()) {
                s += "unsatisfiable";
                continue;
            }
            bool first_lit = true;
            for (const auto& lit : c.literals) {
                if (!first_lit) s += " AND ";
                first_lit = false;
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%s %s %.2f",
                              feature_names[lit.feature].c_str(),
                              lit.greater ? ">" : "<=", lit.threshold);
                s += buf;
            }
        }
        s += "], else predict Y=0";
        return s;
    }
};

inline int ruleset_predict(const RuleSet& rules, std::span<const double> row) {
    for (double v : row) {
        if (!std::isfinite(v)) throw NonFiniteInput("rule evaluation on non-finite input");
    }
    return rules.predict(row);
}

struct BrcgConfig {
    int beam_width = 5;
    int max_clause_len = 4;
    int max_clauses = 3;
    double lambda_complexity = 0.5;  // per-literal penalty
};

namespace detail {

struct BeamNode {
    std::vector<Literal> literals;
    std::vector<std::uint32_t> rows;  // all rows satisfying the conjunction
    double score = 0.0;
    std::uint64_t order = 0;  // enumeration order, used as the tie-break
};

inline std::vector<std::vector<double>> candidate_thresholds(const Dataset& data) {
    std::vector<std::vector<double>> per_feature(data.cols());
    const std::size_t n = data.rows();
    std::vector<double> col(n);
    for (std::size_t j = 0; j < data.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = data.x[i * data.cols() + j];
        std::sort(col.begin(), col.end());
        col.erase(std::unique(col.begin(), col.end()), col.end());
        auto& out = per_feature[j];
        for (std::size_t k = 0; k + 1 < col.size(); ++k) {
            out.push_back(0.5 * (col[k] + col[k + 1]));
        }
    }
    return per_feature;
}

}  // namespace detail

// Greedy cover: repeatedly beam-search the conjunction maximizing
// (new true positives) - lambda * literals - (new false positives), accept it
// if the gain is positive, and retire the rows it covers. Candidate
// thresholds are midpoints between sorted distinct feature values.
inline RuleSet train_brcg(const Dataset& data, const BrcgConfig& cfg = {}) {
    data.validate();
    const std::size_t n = data.rows();
    const int d = int(data.cols());

    bool any_positive = false, any_negative = false;
    for (int label : data.y) (label == 1 ? any_positive : any_negative) = true;
    if (any_positive && !any_negative) {
        // With no negative class every conjunction is vacuously precise;
        // there is nothing to learn.
        throw SingleClassData();
    }

    const auto thresholds = detail::candidate_thresholds(data);
    std::vector<std::uint8_t> covered(n, 0);

    RuleSet rules;
    for (int clause_idx = 0; clause_idx < cfg.max_clauses; ++clause_idx) {
        detail::BeamNode root;
        root.rows.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) root.rows[i] = i;

        std::vector<detail::BeamNode> beam{root};
        detail::BeamNode best;
        best.score = 0.0;  // only strictly improving clauses are accepted
        bool have_best = false;
        std::uint64_t counter = 0;

        for (int depth = 1; depth <= cfg.max_clause_len; ++depth) {
            struct Candidate {
                std::size_t parent;
                Literal lit;
                double score;
                std::uint64_t order;
            };
            std::vector<Candidate> cands;
            for (std::size_t p = 0; p < beam.size(); ++p) {
                const auto& node = beam[p];
                for (int f = 0; f < d; ++f) {
                    for (int g = 0; g < 2; ++g) {
                        const bool greater = g == 1;
                        bool dup = false;
                        for (const auto& lit : node.literals) {
                            if (lit.feature == f && lit.greater == greater) dup = true;
                        }
                        if (dup) continue;
                        for (double t : thresholds[f]) {
                            Literal lit{f, greater, t};
                            int tp = 0, fp = 0;
                            for (std::uint32_t r : node.rows) {
                                if (covered[r] || !lit.satisfied(data.row(r))) continue;
                                (data.y[r] == 1 ? tp : fp) += 1;
                            }
                            const double score =
                                tp - fp - cfg.lambda_complexity * double(depth);
                            cands.push_back({p, lit, score, counter++});
                        }
                    }
                }
            }
            if (cands.empty()) break;
            std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.order < b.order;
            });

            // Materialize the beam, skipping syntactic duplicates.
            std::vector<detail::BeamNode> next;
            std::set<std::vector<std::tuple<int, bool, double>>> seen;
            for (const auto& c : cands) {
                if (int(next.size()) >= cfg.beam_width) break;
                detail::BeamNode child;
                child.literals = beam[c.parent].literals;
                child.literals.push_back(c.lit);
                std::vector<std::tuple<int, bool, double>> sig;
                for (const auto& lit : child.literals) {
                    sig.emplace_back(lit.feature, lit.greater, lit.threshold);
                }
                std::sort(sig.begin(), sig.end());
                if (!seen.insert(sig).second) continue;
                for (std::uint32_t r : beam[c.parent].rows) {
                    if (c.lit.satisfied(data.row(r))) child.rows.push_back(r);
                }
                child.score = c.score;
                child.order = c.order;
                next.push_back(std::move(child));
            }
            if (next.empty()) break;
            if (next[0].score > best.score ||
                (have_best && next[0].score == best.score && next[0].order < best.order)) {
                best = next[0];
                have_best = true;
            }
            beam = std::move(next);
        }

        if (!have_best || best.score <= 0.0) break;

        Clause clause;
        clause.literals = best.literals;
        for (std::uint32_t r : best.rows) {
            if (covered[r]) continue;
            (data.y[r] == 1 ? clause.tp : clause.fp) += 1;
        }
        clause.precision = (clause.tp + 1.0) / (clause.tp + clause.fp + 2.0);
        for (std::uint32_t r : best.rows) covered[r] = 1;
        rules.clauses.push_back(std::move(clause));
    }

    int uncovered = 0, uncovered_pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        ++uncovered;
        uncovered_pos += data.y[i];
    }
    rules.fallback_rate = (uncovered_pos + 1.0) / (uncovered + 2.0);

    if (rules.clauses.empty()) {
        Clause unsat;
        unsat.literals.push_back({0, true, std::numeric_limits<double>::infinity()});
        unsat.precision = 0.0;
        rules.clauses.push_back(std::move(unsat));
    }
    return rules;
}

}  // namespace sideout
