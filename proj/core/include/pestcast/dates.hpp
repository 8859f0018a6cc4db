#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pestcast {

/// Calendar date. Stored as plain year/month/day; arithmetic goes through
/// the proleptic-Gregorian day number so visit gaps and rolling windows are
/// exact across month and year boundaries.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    /// Days since 1970-01-01 (can be negative).
    int day_number() const;
    static Date from_day_number(int n);

    /// 1-based day of year; Dec 31 is 365 or 366 in leap years.
    int day_of_year() const;
    static Date from_day_of_year(int year, int doy);

    bool valid() const;

    /// Parses strict ISO-8601 `YYYY-MM-DD`. Returns nullopt on any deviation.
    static std::optional<Date> parse(std::string_view iso);
    std::string to_string() const;
};

/// b - a in days.
int days_between(const Date& a, const Date& b);

Date add_days(const Date& d, int days);

bool is_leap_year(int year);

} // namespace pestcast
