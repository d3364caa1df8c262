// Calendar dates as std::chrono::sys_days plus ISO-8601 parsing/formatting.
#pragma once

#include <chrono>
#include <cstdio>
#include <string>

#include "sideout/errors.hpp"

namespace sideout {

using Date = std::chrono::sys_days;

inline Date make_date(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                       std::chrono::day{day}};
    if (!ymd.ok()) {
        throw DataError("invalid calendar date " + std::to_string(year) + "-" +
                        std::to_string(month) + "-" + std::to_string(day));
    }
    return sys_days{ymd};
}

// Expects YYYY-MM-DD.
inline Date parse_date(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3 ||
        s.size() != 10) {
        throw DataError("expected ISO date YYYY-MM-DD, got '" + s + "'");
    }
    return make_date(y, m, d);
}

inline std::string format_date(Date date) {
    std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

// Whole days from `from` to `to` (positive when `to` is later).
inline long days_between(Date from, Date to) {
    return (to - from).count();
}

}  // namespace sideout
