#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace partynet {

using Date = std::chrono::year_month_day;

// Parses strict ISO-8601 "YYYY-MM-DD". Rejects calendar-invalid dates
// (Feb 30 and the like).
inline std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    auto digits = [&](size_t pos, size_t len, int& out) {
        out = 0;
        for (size_t k = pos; k < pos + len; ++k) {
            if (text[k] < '0' || text[k] > '9')
                return false;
            out = out * 10 + (text[k] - '0');
        }
        return true;
    };
    int y = 0, m = 0, d = 0;
    if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d))
        return std::nullopt;
    Date date{std::chrono::year{y}, std::chrono::month{unsigned(m)},
              std::chrono::day{unsigned(d)}};
    if (!date.ok())
        return std::nullopt;
    return date;
}

inline std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(date.year()),
                  unsigned(date.month()), unsigned(date.day()));
    return buf;
}

inline Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline int year_of(const Date& date) { return int(date.year()); }

} // namespace partynet
