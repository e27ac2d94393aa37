#pragma once
// Calendar arithmetic and ISO-8601 parsing. Everything is UTC: day
// bucketing never consults the machine timezone, so the same manifest
// produces the same buckets on every host.

#include <scrapmem/errors.hpp>

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace scrapmem {

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

// Days since 1970-01-01 (proleptic Gregorian). Hinnant's algorithm.
inline std::int64_t days_from_civil(const CivilDate& d) {
    std::int64_t y = d.year;
    y -= d.month <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (d.month + (d.month > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

inline CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

inline bool is_valid_date(const CivilDate& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int len = lengths[d.month - 1];
    bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
    if (d.month == 2 && leap) len = 29;
    return d.day <= len;
}

inline std::string to_string(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

inline CivilDate parse_date(std::string_view s) {
    CivilDate d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' ||
        std::from_chars(s.data(), s.data() + 4, d.year).ec != std::errc{} ||
        std::from_chars(s.data() + 5, s.data() + 7, d.month).ec != std::errc{} ||
        std::from_chars(s.data() + 8, s.data() + 10, d.day).ec != std::errc{} ||
        !is_valid_date(d)) {
        throw ValidationError("unparseable date: '" + std::string(s) + "'");
    }
    return d;
}

// A UTC point in time with second resolution.
struct UtcInstant {
    std::int64_t epoch_seconds = 0;

    auto operator<=>(const UtcInstant&) const = default;

    CivilDate utc_date() const {
        std::int64_t days = epoch_seconds / 86400;
        if (epoch_seconds % 86400 < 0) --days;
        return civil_from_days(days);
    }
    int minutes_of_day() const {
        std::int64_t sod = epoch_seconds % 86400;
        if (sod < 0) sod += 86400;
        return static_cast<int>(sod / 60);
    }
};

// Accepts YYYY-MM-DD["T"HH:MM[:SS[.frac]]][Z|±HH[:]MM]. A timestamp with no
// zone designator is taken as UTC.
inline UtcInstant parse_iso8601(std::string_view s) {
    auto fail = [&]() -> UtcInstant {
        throw ValidationError("unparseable timestamp: '" + std::string(s) + "'");
    };
    if (s.size() < 10) return fail();
    CivilDate date;
    try {
        date = parse_date(s.substr(0, 10));
    } catch (const ValidationError&) {
        return fail();
    }
    std::int64_t secs = days_from_civil(date) * 86400;
    std::string_view rest = s.substr(10);
    if (!rest.empty()) {
        if (rest[0] != 'T' && rest[0] != ' ') return fail();
        rest.remove_prefix(1);
        int hh = 0, mm = 0, ss = 0;
        if (rest.size() < 5 || rest[2] != ':' ||
            std::from_chars(rest.data(), rest.data() + 2, hh).ec != std::errc{} ||
            std::from_chars(rest.data() + 3, rest.data() + 5, mm).ec != std::errc{})
            return fail();
        rest.remove_prefix(5);
        if (rest.size() >= 3 && rest[0] == ':') {
            if (std::from_chars(rest.data() + 1, rest.data() + 3, ss).ec != std::errc{})
                return fail();
            rest.remove_prefix(3);
        }
        if (!rest.empty() && rest[0] == '.') {  // fractional seconds: ignored
            rest.remove_prefix(1);
            while (!rest.empty() && rest[0] >= '0' && rest[0] <= '9') rest.remove_prefix(1);
        }
        if (hh > 23 || mm > 59 || ss > 60) return fail();
        secs += hh * 3600 + mm * 60 + ss;
        if (!rest.empty()) {
            if (rest[0] == 'Z') {
                rest.remove_prefix(1);
            } else if (rest[0] == '+' || rest[0] == '-') {
                int sign = rest[0] == '+' ? 1 : -1;
                rest.remove_prefix(1);
                int zh = 0, zm = 0;
                if (rest.size() < 2 ||
                    std::from_chars(rest.data(), rest.data() + 2, zh).ec != std::errc{})
                    return fail();
                rest.remove_prefix(2);
                if (!rest.empty() && rest[0] == ':') rest.remove_prefix(1);
                if (rest.size() >= 2) {
                    if (std::from_chars(rest.data(), rest.data() + 2, zm).ec != std::errc{})
                        return fail();
                    rest.remove_prefix(2);
                }
                secs -= sign * (zh * 3600 + zm * 60);
            }
            if (!rest.empty()) return fail();
        }
    }
    return UtcInstant{secs};
}

// Whole days elapsed between a page date and "now" (negative clamped to 0).
inline int age_in_days(const CivilDate& then, const CivilDate& now) {
    std::int64_t diff = days_from_civil(now) - days_from_civil(then);
    return diff < 0 ? 0 : static_cast<int>(diff);
}

}  // namespace scrapmem
