#include "pestcast/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace pestcast {

namespace {

constexpr std::array<int, 12> kDaysInMonth = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

int days_in_month(int year, int month) {
    if (month == 2 && is_leap_year(year)) return 29;
    return kDaysInMonth[static_cast<size_t>(month - 1)];
}

// Howard Hinnant's civil-days algorithm.
int days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int>(doe) - 719468;
}

Date civil_from_days(int z) {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{y + (m <= 2), static_cast<int>(m), static_cast<int>(d)};
}

} // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

bool Date::valid() const {
    if (month < 1 || month > 12) return false;
    if (day < 1 || day > days_in_month(year, month)) return false;
    return true;
}

int Date::day_number() const {
    return days_from_civil(year, month, day);
}

Date Date::from_day_number(int n) {
    return civil_from_days(n);
}

int Date::day_of_year() const {
    return day_number() - days_from_civil(year, 1, 1) + 1;
}

Date Date::from_day_of_year(int year, int doy) {
    return civil_from_days(days_from_civil(year, 1, 1) + doy - 1);
}

std::optional<Date> Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
    Date out;
    auto parse_int = [](std::string_view s, int& value) {
        const auto* begin = s.data();
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        return ec == std::errc{} && ptr == end;
    };
    if (!parse_int(iso.substr(0, 4), out.year)) return std::nullopt;
    if (!parse_int(iso.substr(5, 2), out.month)) return std::nullopt;
    if (!parse_int(iso.substr(8, 2), out.day)) return std::nullopt;
    if (!out.valid()) return std::nullopt;
    return out;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return std::string(buf);
}

int days_between(const Date& a, const Date& b) {
    return b.day_number() - a.day_number();
}

Date add_days(const Date& d, int days) {
    return Date::from_day_number(d.day_number() + days);
}

} // namespace pestcast
