#include "spamflow/util/money.hpp"

#include <cstdio>
#include <cstdlib>

#include "spamflow/util/errors.hpp"

namespace spamflow::util {

std::int64_t parse_scaled_decimal(std::string_view s, int scale_digits) {
    std::string_view rest = s;
    while (!rest.empty() && (rest.front() == ' ')) rest.remove_prefix(1);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) rest.remove_suffix(1);
    if (rest.empty()) throw DataError("empty decimal");

    bool negative = false;
    if (rest.front() == '-' || rest.front() == '+') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    std::int64_t integral = 0;
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < rest.size() && rest[i] >= '0' && rest[i] <= '9'; ++i) {
        integral = integral * 10 + (rest[i] - '0');
        any_digit = true;
    }

    std::int64_t frac = 0;
    int frac_digits = 0;
    int round_carry = 0;
    if (i < rest.size()) {
        if (rest[i] != '.') throw DataError("invalid decimal: '" + std::string(s) + "'");
        ++i;
        for (; i < rest.size() && rest[i] >= '0' && rest[i] <= '9'; ++i) {
            if (frac_digits < scale_digits) {
                frac = frac * 10 + (rest[i] - '0');
                ++frac_digits;
            } else if (frac_digits == scale_digits) {
                round_carry = (rest[i] >= '5') ? 1 : 0;
                ++frac_digits;
            }
            any_digit = true;
        }
        if (i != rest.size()) throw DataError("invalid decimal: '" + std::string(s) + "'");
    }
    if (!any_digit) throw DataError("invalid decimal: '" + std::string(s) + "'");

    std::int64_t scale = 1;
    for (int k = 0; k < scale_digits; ++k) scale *= 10;
    std::int64_t frac_scale = 1;
    for (int k = 0; k < std::min(frac_digits, scale_digits); ++k) frac_scale *= 10;
    frac *= scale / frac_scale;

    std::int64_t value = integral * scale + frac + round_carry;
    return negative ? -value : value;
}

std::string format_scaled_decimal(std::int64_t value, int scale_digits) {
    std::int64_t scale = 1;
    for (int k = 0; k < scale_digits; ++k) scale *= 10;
    const bool negative = value < 0;
    const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(value + 1)) + 1
                                       : static_cast<std::uint64_t>(value);
    const std::uint64_t whole = mag / static_cast<std::uint64_t>(scale);
    const std::uint64_t frac = mag % static_cast<std::uint64_t>(scale);
    char buf[48];
    if (scale_digits > 0) {
        std::snprintf(buf, sizeof buf, "%s%llu.%0*llu", negative ? "-" : "",
                      static_cast<unsigned long long>(whole), scale_digits,
                      static_cast<unsigned long long>(frac));
    } else {
        std::snprintf(buf, sizeof buf, "%s%llu", negative ? "-" : "",
                      static_cast<unsigned long long>(whole));
    }
    return buf;
}

std::int64_t mul_div_round(std::int64_t a, std::int64_t b, std::int64_t divisor) {
    __int128 prod = static_cast<__int128>(a) * b;
    const bool negative = prod < 0;
    if (negative) prod = -prod;
    __int128 q = (prod + divisor / 2) / divisor;
    return negative ? -static_cast<std::int64_t>(q) : static_cast<std::int64_t>(q);
}

Cents sat_to_usd_cents(Satoshi sat, PriceE4 usd_per_btc_e4) {
    // sat * (price/1e4) / 1e8 * 100 cents == sat * price / 1e10
    return mul_div_round(sat, usd_per_btc_e4, 10'000'000'000LL);
}

Cents convert_cents(Cents amount_cents, RateE6 usd_per_unit_e6) {
    return mul_div_round(amount_cents, usd_per_unit_e6, 1'000'000LL);
}

}  // namespace spamflow::util
