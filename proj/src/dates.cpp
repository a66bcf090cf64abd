#include "trendsym/dates.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>

namespace trendsym {

namespace {

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> base = {31, 28, 31, 30, 31, 30,
                                                 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return base[static_cast<std::size_t>(m - 1)];
}

// Parses exactly `width` digits starting at s[pos]; returns -1 on failure.
int take_digits(std::string_view s, std::size_t pos, std::size_t width) {
    if (pos + width > s.size()) return -1;
    int v = 0;
    for (std::size_t i = pos; i < pos + width; ++i) {
        char ch = s[i];
        if (ch < '0' || ch > '9') return -1;
        v = v * 10 + (ch - '0');
    }
    return v;
}

}  // namespace

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 &&
           day <= days_in_month(year, month);
}

std::int64_t Date::serial() const {
    // Howard Hinnant's days-from-civil algorithm.
    int y = year;
    const int m = month;
    const int d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<Date> Date::parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    const int y = take_digits(s, 0, 4);
    const int m = take_digits(s, 5, 2);
    const int d = take_digits(s, 8, 2);
    if (y < 0 || m < 0 || d < 0) return std::nullopt;
    Date out{y, m, d};
    if (!out.valid()) return std::nullopt;
    return out;
}

std::optional<Date> Date::parse_us(std::string_view s) {
    // MM/DD/YYYY, tolerating one-digit month/day (e.g. 1/5/1990).
    std::size_t first = s.find('/');
    if (first == std::string_view::npos) return std::nullopt;
    std::size_t second = s.find('/', first + 1);
    if (second == std::string_view::npos) return std::nullopt;

    auto to_int = [](std::string_view part) -> int {
        if (part.empty() || part.size() > 4) return -1;
        int v = 0;
        for (char ch : part) {
            if (ch < '0' || ch > '9') return -1;
            v = v * 10 + (ch - '0');
        }
        return v;
    };
    const int m = to_int(s.substr(0, first));
    const int d = to_int(s.substr(first + 1, second - first - 1));
    const int y = to_int(s.substr(second + 1));
    if (m < 0 || d < 0 || y < 1000) return std::nullopt;
    Date out{y, m, d};
    if (!out.valid()) return std::nullopt;
    return out;
}

}  // namespace trendsym
