#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tvgc {

/// Plain calendar date (no time zone), stored as days since 1970-01-01.
/// Bitcoin trades every calendar day and GSVI is daily, so a civil day is
/// the only time unit the library needs.
class Date {
public:
    Date() = default;
    explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_ymd(int year, int month, int day);

    /// Parses strict ISO-8601 "YYYY-MM-DD". Throws ValidationError on
    /// malformed input or out-of-range components.
    static Date parse(std::string_view text);

    std::int32_t days_since_epoch() const { return days_; }

    int year() const;
    int month() const;
    int day() const;

    std::string to_string() const; // "YYYY-MM-DD"

    Date operator+(std::int32_t days) const { return Date(days_ + days); }
    Date operator-(std::int32_t days) const { return Date(days_ - days); }
    /// Signed day count from other to *this.
    std::int32_t operator-(Date other) const { return days_ - other.days_; }

    auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

std::ostream& operator<<(std::ostream& os, Date d);

} // namespace tvgc
