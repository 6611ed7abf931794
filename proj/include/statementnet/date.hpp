#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "statementnet/errors.hpp"

namespace statementnet {

/// Calendar date at day precision. Record timestamps finer than a day are
/// truncated on parse.
class Date {
public:
    Date() : ymd_{std::chrono::year{1970}, std::chrono::month{1}, std::chrono::day{1}} {}

    Date(int year, unsigned month, unsigned day)
        : ymd_{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}} {
        if (!ymd_.ok()) throw DataError("invalid calendar date: " + to_string());
    }

    /// Accepts "YYYY-MM-DD" with an optional trailing "T..." or " ..." time
    /// part, which is discarded. Rejects anything else.
    static std::optional<Date> try_parse(std::string_view s) {
        if (s.size() < 10) return std::nullopt;
        if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') return std::nullopt;
        auto digit = [&](std::size_t i) { return s[i] >= '0' && s[i] <= '9'; };
        for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
            if (!digit(std::size_t(i))) return std::nullopt;
        if (s[4] != '-' || s[7] != '-') return std::nullopt;
        int y = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
        unsigned m = unsigned((s[5] - '0') * 10 + (s[6] - '0'));
        unsigned d = unsigned((s[8] - '0') * 10 + (s[9] - '0'));
        std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
        if (!ymd.ok()) return std::nullopt;
        Date out;
        out.ymd_ = ymd;
        return out;
    }

    static Date parse(std::string_view s) {
        auto d = try_parse(s);
        if (!d) throw DataError("unparseable date '" + std::string(s) + "' (expected YYYY-MM-DD)");
        return *d;
    }

    int year() const { return int(ymd_.year()); }
    unsigned month() const { return unsigned(ymd_.month()); }
    unsigned day() const { return unsigned(ymd_.day()); }

    /// Linear month index; consecutive calendar months differ by exactly 1.
    int month_index() const { return year() * 12 + int(month()) - 1; }

    Date next_day() const {
        std::chrono::sys_days sd{ymd_};
        Date out;
        out.ymd_ = std::chrono::year_month_day{sd + std::chrono::days{1}};
        return out;
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
        return buf;
    }

    friend bool operator==(const Date& a, const Date& b) { return a.ymd_ == b.ymd_; }
    friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
        if (auto c = a.year() <=> b.year(); c != 0) return c;
        if (auto c = a.month() <=> b.month(); c != 0) return c;
        return a.day() <=> b.day();
    }

private:
    std::chrono::year_month_day ymd_;
};

/// Inclusive day interval.
struct DateRange {
    Date min;
    Date max;

    bool contains(const Date& d) const { return d >= min && d <= max; }
};

/// "YYYY-MM" for a linear month index.
inline std::string month_label(int month_index) {
    int y = month_index / 12;
    int m = month_index % 12;
    if (m < 0) {
        m += 12;
        --y;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%04d-%02d", y, m + 1);
    return buf;
}

/// Month-index difference across a range, clamped to at least one.
inline int month_span(const Date& a, const Date& b) {
    int diff = b.month_index() - a.month_index();
    return diff < 1 ? 1 : diff;
}

}  // namespace statementnet
