#include "tvgc/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <ostream>

#include "tvgc/errors.hpp"

namespace tvgc {
namespace {

// Civil-date <-> day-number conversions (proleptic Gregorian calendar,
// epoch 1970-01-01). Standard era-based algorithm.
std::int32_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int32_t>(doe) - 719468;
}

std::array<int, 3> civil_from_days(std::int32_t z) {
    z += 719468;
    const std::int32_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), static_cast<int>(m), static_cast<int>(d)};
}

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

int parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ValidationError("invalid date component '" + std::string(s) + "'");
    }
    return value;
}

} // namespace

Date Date::from_ymd(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "invalid calendar date %04d-%02d-%02d", year, month, day);
        throw ValidationError(buf);
    }
    return Date(days_from_civil(year, month, day));
}

Date Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ValidationError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    const int y = parse_int(text.substr(0, 4));
    const int m = parse_int(text.substr(5, 2));
    const int d = parse_int(text.substr(8, 2));
    return from_ymd(y, m, d);
}

int Date::year() const { return civil_from_days(days_)[0]; }
int Date::month() const { return civil_from_days(days_)[1]; }
int Date::day() const { return civil_from_days(days_)[2]; }

std::string Date::to_string() const {
    const auto ymd = civil_from_days(days_);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", ymd[0], ymd[1], ymd[2]);
    return buf;
}

std::ostream& operator<<(std::ostream& os, Date d) {
    return os << d.to_string();
}

} // namespace tvgc
