#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace spamflow::util {

inline constexpr std::int64_t seconds_per_day = 86400;

// Civil-calendar conversions (proleptic Gregorian, UTC only).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

// "YYYY-MM-DD" -> days since the Unix epoch. Throws DataError on bad input.
std::int64_t parse_date(std::string_view s);

// Accepts "YYYY-MM-DD", "YYYY-MM-DD HH:MM:SS" and "YYYY-MM-DDTHH:MM:SS[Z]".
// Returns seconds since the Unix epoch; the value is always interpreted as UTC.
std::int64_t parse_datetime(std::string_view s);

// Non-throwing variant; returns false instead of raising on bad input.
bool try_parse_datetime(std::string_view s, std::int64_t& epoch_out);

std::int64_t epoch_day(std::int64_t epoch_seconds);

std::string format_date(std::int64_t epoch_seconds);       // "YYYY-MM-DD"
std::string format_datetime(std::int64_t epoch_seconds);   // "YYYY-MM-DDTHH:MM:SSZ"
std::string format_month(std::int64_t epoch_seconds);      // "YYYY-MM"

}  // namespace spamflow::util
