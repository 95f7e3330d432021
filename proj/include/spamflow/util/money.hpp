#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace spamflow::util {

// Monetary values are fixed-point integers so comparisons stay exact:
//   USD amounts      -> cents            (Cents)
//   BTC amounts      -> satoshis         (Satoshi)
//   USD/BTC prices   -> 1e-4 dollars     (PriceE4)
//   fiat FX rates    -> 1e-6 USD/unit    (RateE6)
using Cents = std::int64_t;
using Satoshi = std::int64_t;
using PriceE4 = std::int64_t;
using RateE6 = std::int64_t;

inline constexpr Satoshi satoshi_per_btc = 100'000'000;

// Parses a plain decimal ("1234", "-0.5", "4000.2518") into an integer scaled
// by 10^scale_digits. Digits beyond the scale are rounded half away from zero.
// Throws DataError on anything that is not a decimal number.
std::int64_t parse_scaled_decimal(std::string_view s, int scale_digits);

// Renders a scaled integer back to a decimal string with exactly
// `scale_digits` fractional digits ("-12.05" for value -1205, scale 2).
std::string format_scaled_decimal(std::int64_t value, int scale_digits);

inline Cents parse_usd(std::string_view s) { return parse_scaled_decimal(s, 2); }
inline std::string format_usd(Cents cents) { return format_scaled_decimal(cents, 2); }

inline std::string format_btc(Satoshi sat) { return format_scaled_decimal(sat, 8); }

// a * b / divisor, rounded half away from zero, carried out in 128-bit
// arithmetic so full-range products cannot overflow.
std::int64_t mul_div_round(std::int64_t a, std::int64_t b, std::int64_t divisor);

// satoshis * price / 1e10 == USD cents.
Cents sat_to_usd_cents(Satoshi sat, PriceE4 usd_per_btc_e4);

// amount_cents * rate / 1e6, rounded half away from zero.
Cents convert_cents(Cents amount_cents, RateE6 usd_per_unit_e6);

}  // namespace spamflow::util
