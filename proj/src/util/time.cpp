#include "spamflow/util/time.hpp"

#include <cstdio>

#include "spamflow/util/errors.hpp"

namespace spamflow::util {

// Howard Hinnant's branchless civil-date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2));
}

namespace {

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

bool try_parse_date_part(std::string_view s, std::int64_t& day_out) {
    unsigned y, m, d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    if (!parse_fixed_uint(s, 0, 4, y) || !parse_fixed_uint(s, 5, 2, m) ||
        !parse_fixed_uint(s, 8, 2, d)) {
        return false;
    }
    if (m < 1 || m > 12 || d < 1 || d > 31) return false;
    day_out = days_from_civil(static_cast<int>(y), m, d);
    return true;
}

}  // namespace

bool try_parse_datetime(std::string_view s, std::int64_t& epoch_out) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    if (s.size() == 10) {
        std::int64_t day;
        if (!try_parse_date_part(s, day)) return false;
        epoch_out = day * seconds_per_day;
        return true;
    }
    if (s.size() < 19) return false;
    std::int64_t day;
    if (!try_parse_date_part(s.substr(0, 10), day)) return false;
    if (s[10] != 'T' && s[10] != ' ') return false;
    unsigned hh, mm, ss;
    if (s[13] != ':' || s[16] != ':') return false;
    if (!parse_fixed_uint(s, 11, 2, hh) || !parse_fixed_uint(s, 14, 2, mm) ||
        !parse_fixed_uint(s, 17, 2, ss)) {
        return false;
    }
    if (hh > 23 || mm > 59 || ss > 60) return false;
    std::string_view rest = s.substr(19);
    if (!rest.empty() && rest != "Z" && rest != "+00:00") return false;
    epoch_out = day * seconds_per_day + hh * 3600 + mm * 60 + ss;
    return true;
}

std::int64_t parse_datetime(std::string_view s) {
    std::int64_t epoch;
    if (!try_parse_datetime(s, epoch)) {
        throw DataError("invalid timestamp: '" + std::string(s) + "'");
    }
    return epoch;
}

std::int64_t parse_date(std::string_view s) {
    std::int64_t day;
    std::string_view trimmed = s;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) {
        trimmed.remove_suffix(1);
    }
    if (!try_parse_date_part(trimmed, day)) {
        throw DataError("invalid date: '" + std::string(s) + "'");
    }
    return day;
}

std::int64_t epoch_day(std::int64_t epoch_seconds) {
    // floor division; pre-epoch timestamps belong to the earlier day
    std::int64_t d = epoch_seconds / seconds_per_day;
    if (epoch_seconds % seconds_per_day < 0) --d;
    return d;
}

std::string format_date(std::int64_t epoch_seconds) {
    int y;
    unsigned m, d;
    civil_from_days(epoch_day(epoch_seconds), y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

std::string format_datetime(std::int64_t epoch_seconds) {
    const std::int64_t day = epoch_day(epoch_seconds);
    std::int64_t sec = epoch_seconds - day * seconds_per_day;
    int y;
    unsigned m, d;
    civil_from_days(day, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(sec / 3600), static_cast<int>((sec / 60) % 60),
                  static_cast<int>(sec % 60));
    return buf;
}

std::string format_month(std::int64_t epoch_seconds) {
    int y;
    unsigned m, d;
    civil_from_days(epoch_day(epoch_seconds), y, m, d);
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04d-%02u", y, m);
    return buf;
}

}  // namespace spamflow::util
