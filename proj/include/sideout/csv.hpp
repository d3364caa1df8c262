// Flat-file ingestion and persistence.
//
// Match CSV schema (header required, UTF-8, comma-separated, no quoting):
//   match_id,date,season,home_team,away_team,home_sets,away_sets,
//   home_points,away_points,stage
// with date in ISO-8601 and stage one of League|QuarterFinal|SemiFinal|Final.
//
// Feature CSV schema: match_id, the 19 feature columns in kFeatureNames
// order, then label.
#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sideout/types.hpp"

namespace sideout {

inline constexpr const char* kMatchCsvHeader =
    "match_id,date,season,home_team,away_team,home_sets,away_sets,"
    "home_points,away_points,stage";

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline int parse_int_field(const std::string& s, std::size_t line, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw MalformedRow(line, std::string(what) + " is not an integer: '" + s + "'");
    }
    return v;
}

inline double parse_double_field(const std::string& s, std::size_t line, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw MalformedRow(line, std::string(what) + " is not a number: '" + s + "'");
    }
}

}  // namespace detail

// Reads, validates and sorts matches ascending by date (ties by match_id).
inline std::vector<RawMatch> parse_matches_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty file: missing CSV header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMatchCsvHeader) {
        throw MalformedRow(1, "unexpected header, want '" + std::string(kMatchCsvHeader) + "'");
    }

    std::vector<RawMatch> matches;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 10) {
            throw MalformedRow(line_no, "expected 10 fields, got " + std::to_string(f.size()));
        }
        RawMatch m;
        m.match_id = f[0];
        try {
            m.date = parse_date(f[1]);
        } catch (const DataError& e) {
            throw MalformedRow(line_no, e.what());
        }
        m.season = f[2];
        m.home_team = f[3];
        m.away_team = f[4];
        m.home_sets = detail::parse_int_field(f[5], line_no, "home_sets");
        m.away_sets = detail::parse_int_field(f[6], line_no, "away_sets");
        m.home_points = detail::parse_int_field(f[7], line_no, "home_points");
        m.away_points = detail::parse_int_field(f[8], line_no, "away_points");
        try {
            m.stage = parse_stage(f[9]);
        } catch (const DataError& e) {
            throw MalformedRow(line_no, e.what());
        }
        if (m.match_id.empty()) throw MalformedRow(line_no, "empty match_id");
        m.validate();
        matches.push_back(std::move(m));
    }

    std::stable_sort(matches.begin(), matches.end(),
                     [](const RawMatch& a, const RawMatch& b) {
                         if (a.date != b.date) return a.date < b.date;
                         return a.match_id < b.match_id;
                     });
    return matches;
}

inline std::vector<RawMatch> parse_matches_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_matches_csv(in);
}

inline void write_matches_csv(std::ostream& out, const std::vector<RawMatch>& matches) {
    out << kMatchCsvHeader << "\n";
    for (const auto& m : matches) {
        out << m.match_id << ',' << format_date(m.date) << ',' << m.season << ','
            << m.home_team << ',' << m.away_team << ',' << m.home_sets << ','
            << m.away_sets << ',' << m.home_points << ',' << m.away_points << ','
            << to_string(m.stage) << "\n";
    }
}

inline void write_matches_csv(const std::string& path, const std::vector<RawMatch>& matches) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    write_matches_csv(out, matches);
}

inline std::string feature_csv_header() {
    std::string h = "match_id";
    for (const char* name : kFeatureNames) {
        h += ',';
        h += name;
    }
    h += ",label";
    return h;
}

inline void write_features_csv(std::ostream& out, const std::vector<FeatureVector>& rows) {
    out << feature_csv_header() << "\n";
    char buf[32];
    for (const auto& fv : rows) {
        out << fv.match_id;
        for (double v : fv.values) {
            std::snprintf(buf, sizeof(buf), "%.10g", v);
            out << ',' << buf;
        }
        out << ',' << fv.label << "\n";
    }
}

inline void write_features_csv(const std::string& path, const std::vector<FeatureVector>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    write_features_csv(out, rows);
}

// Rows come back in file order; the writer emits chronological order, and
// downstream splitting relies on that.
inline std::vector<FeatureVector> read_features_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: missing CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != feature_csv_header()) {
        throw MalformedRow(1, "unexpected feature CSV header");
    }
    std::vector<FeatureVector> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != std::size_t(kNumFeatures) + 2) {
            throw MalformedRow(line_no, "expected " + std::to_string(kNumFeatures + 2) +
                                            " fields, got " + std::to_string(f.size()));
        }
        FeatureVector fv;
        fv.match_id = f[0];
        for (int i = 0; i < kNumFeatures; ++i) {
            fv.values[i] = detail::parse_double_field(f[i + 1], line_no, kFeatureNames[i]);
            if (!std::isfinite(fv.values[i])) {
                throw MalformedRow(line_no, std::string(kFeatureNames[i]) + " is not finite");
            }
        }
        fv.label = detail::parse_int_field(f[kNumFeatures + 1], line_no, "label");
        if (fv.label != 0 && fv.label != 1) {
            throw MalformedRow(line_no, "label must be 0 or 1");
        }
        rows.push_back(std::move(fv));
    }
    return rows;
}

inline std::vector<FeatureVector> read_features_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return read_features_csv(in);
}

}  // namespace sideout
