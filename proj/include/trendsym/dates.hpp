#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trendsym {

// Calendar date. Ordering is field order (year, month, day), which matches
// chronological order for valid dates.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;

    bool valid() const;

    // Days since 1970-01-01 (proleptic Gregorian).
    std::int64_t serial() const;

    std::string to_string() const;  // YYYY-MM-DD

    static std::optional<Date> parse_iso(std::string_view s);  // YYYY-MM-DD
    static std::optional<Date> parse_us(std::string_view s);   // MM/DD/YYYY
};

}  // namespace trendsym
