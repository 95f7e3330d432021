#include "spamflow/corpus/extract.hpp"

#include <algorithm>
#include <cctype>

#include "spamflow/util/base58.hpp"
#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::corpus {

FiatRateTable FiatRateTable::load_csv(const std::string& path) {
    FiatRateTable table;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() != 3) throw SchemaError(path, line_no, "expected date,currency,usd_per_unit");
        std::string ccy = f[1];
        std::transform(ccy.begin(), ccy.end(), ccy.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        table.add(util::parse_date(f[0]), ccy, util::parse_scaled_decimal(f[2], 6));
    });
    return table;
}

void FiatRateTable::add(std::int64_t day, const std::string& currency, util::RateE6 rate) {
    if (rate <= 0) throw DataError("fiat rate must be positive");
    rates_[{currency, day}] = rate;
}

std::optional<util::RateE6> FiatRateTable::usd_per_unit(const std::string& currency,
                                                        std::int64_t day) const {
    auto it = rates_.find({currency, day});
    if (it == rates_.end()) return std::nullopt;
    return it->second;
}

namespace {

bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

}  // namespace

std::vector<std::string> extract_addresses(std::string_view body) {
    std::vector<std::string> found;
    auto push_unique = [&](std::string_view addr) {
        if (std::find(found.begin(), found.end(), addr) == found.end()) {
            found.emplace_back(addr);
        }
    };

    std::size_t i = 0;
    const std::size_t n = body.size();
    while (i < n) {
        if (!util::is_base58_char(body[i])) {
            ++i;
            continue;
        }
        std::size_t run_end = i;
        while (run_end < n && util::is_base58_char(body[run_end])) ++run_end;

        // every legal (start, length) window within the run, longest first
        std::size_t pos = i;
        while (pos < run_end) {
            if (body[pos] != '1' && body[pos] != '3') {
                ++pos;
                continue;
            }
            const std::size_t max_len = std::min<std::size_t>(35, run_end - pos);
            bool matched = false;
            for (std::size_t len = max_len; len >= 26; --len) {
                const std::string_view cand = body.substr(pos, len);
                if (util::base58check_address_valid(cand)) {
                    push_unique(cand);
                    pos += len;
                    matched = true;
                    break;
                }
            }
            if (!matched) ++pos;
        }
        i = run_end;
    }
    return found;
}

namespace {

struct ParsedNumber {
    util::Cents cents = 0;
    std::size_t end = 0;  // one past the number
};

// Digits with optional strict thousands groups and up to a 2-digit fraction.
std::optional<ParsedNumber> parse_number(std::string_view s, std::size_t start) {
    std::size_t p = start;
    const std::size_t n = s.size();
    std::string digits;
    while (p < n && std::isdigit(static_cast<unsigned char>(s[p]))) {
        digits.push_back(s[p]);
        ++p;
    }
    if (digits.empty()) return std::nullopt;
    if (digits.size() <= 3) {
        // thousands groups: a comma must be followed by exactly three digits
        while (p < n && s[p] == ',') {
            if (p + 1 >= n || !std::isdigit(static_cast<unsigned char>(s[p + 1]))) break;
            if (p + 2 >= n || !std::isdigit(static_cast<unsigned char>(s[p + 2]))) break;
            if (p + 3 >= n || !std::isdigit(static_cast<unsigned char>(s[p + 3]))) break;
            if (p + 4 < n && std::isdigit(static_cast<unsigned char>(s[p + 4]))) break;
            digits.append(s.substr(p + 1, 3));
            p += 4;
        }
    }
    std::string frac;
    if (p < n && s[p] == '.' && p + 1 < n && std::isdigit(static_cast<unsigned char>(s[p + 1]))) {
        std::size_t q = p + 1;
        while (q < n && std::isdigit(static_cast<unsigned char>(s[q]))) {
            frac.push_back(s[q]);
            ++q;
        }
        p = q;
    }
    ParsedNumber out;
    out.end = p;
    out.cents = util::parse_scaled_decimal(frac.empty() ? digits : digits + "." + frac, 2);
    return out;
}

// Currency marker adjacent to a number. Backward = just before `start`,
// forward = just after `end`.
std::optional<std::string> currency_before(std::string_view s, std::size_t start) {
    std::size_t p = start;
    while (p > 0 && s[p - 1] == ' ') --p;
    if (p == 0) return std::nullopt;
    if (s[p - 1] == '$') return "USD";
    if (p >= 3 && static_cast<unsigned char>(s[p - 3]) == 0xe2 &&
        static_cast<unsigned char>(s[p - 2]) == 0x82 &&
        static_cast<unsigned char>(s[p - 1]) == 0xac) {
        return "EUR";
    }
    if (p >= 2 && static_cast<unsigned char>(s[p - 2]) == 0xc2 &&
        static_cast<unsigned char>(s[p - 1]) == 0xa3) {
        return "GBP";
    }
    std::size_t w_end = p;
    std::size_t w_begin = p;
    while (w_begin > 0 && is_ascii_alpha(s[w_begin - 1])) --w_begin;
    if (w_begin == w_end) return std::nullopt;
    std::string word;
    for (std::size_t k = w_begin; k < w_end; ++k) word.push_back(lower(s[k]));
    if (word == "usd") return "USD";
    if (word == "eur") return "EUR";
    if (word == "gbp") return "GBP";
    if (word == "nok" || word == "kr") return "NOK";
    return std::nullopt;
}

std::optional<std::string> currency_after(std::string_view s, std::size_t end) {
    std::size_t p = end;
    const std::size_t n = s.size();
    while (p < n && s[p] == ' ') ++p;
    if (p >= n) return std::nullopt;
    if (s[p] == '$') return "USD";
    if (p + 2 < n && static_cast<unsigned char>(s[p]) == 0xe2 &&
        static_cast<unsigned char>(s[p + 1]) == 0x82 &&
        static_cast<unsigned char>(s[p + 2]) == 0xac) {
        return "EUR";
    }
    if (p + 1 < n && static_cast<unsigned char>(s[p]) == 0xc2 &&
        static_cast<unsigned char>(s[p + 1]) == 0xa3) {
        return "GBP";
    }
    std::size_t w_end = p;
    while (w_end < n && is_ascii_alpha(s[w_end])) ++w_end;
    if (w_end == p) return std::nullopt;
    if (w_end < n && is_ascii_alnum(s[w_end])) return std::nullopt;
    std::string word;
    for (std::size_t k = p; k < w_end; ++k) word.push_back(lower(s[k]));
    if (word == "usd" || word == "dollar" || word == "dollars") return "USD";
    if (word == "eur" || word == "euro" || word == "euros") return "EUR";
    if (word == "gbp" || word == "pound" || word == "pounds") return "GBP";
    if (word == "nok" || word == "kr" || word == "kroner") return "NOK";
    return std::nullopt;
}

struct FoundAmount {
    util::Cents cents;
    std::string currency;
};

std::optional<FoundAmount> scan_amount(std::string_view body) {
    const std::size_t n = body.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(body[i]))) continue;
        if (i > 0 && is_ascii_alnum(body[i - 1])) {
            // interior of a word or address; skip the whole alnum run
            while (i + 1 < n && is_ascii_alnum(body[i + 1])) ++i;
            continue;
        }
        auto num = parse_number(body, i);
        if (!num) continue;
        if (num->end < n && is_ascii_alpha(body[num->end])) {
            i = num->end;
            continue;
        }
        if (auto ccy = currency_before(body, i)) {
            return FoundAmount{num->cents, *ccy};
        }
        if (auto ccy = currency_after(body, num->end)) {
            return FoundAmount{num->cents, *ccy};
        }
        i = num->end;
    }
    return std::nullopt;
}

std::optional<std::string> scan_secret(std::string_view body,
                                       const std::vector<std::string>& labels) {
    std::string lowered;
    lowered.reserve(body.size());
    for (char c : body) lowered.push_back(lower(c));

    std::size_t best_pos = std::string::npos;
    std::string best;
    for (const std::string& label : labels) {
        std::size_t from = 0;
        while (true) {
            const std::size_t at = lowered.find(label, from);
            if (at == std::string::npos) break;
            from = at + 1;
            if (at > 0 && is_ascii_alpha(lowered[at - 1])) continue;
            std::size_t p = at + label.size();
            if (p < body.size() && is_ascii_alpha(lowered[p])) continue;
            auto skip_spaces = [&] {
                while (p < body.size() && (body[p] == ' ' || body[p] == '\t')) ++p;
            };
            skip_spaces();
            if (lowered.compare(p, 6, "number") == 0) {  // "phone number: x"
                p += 6;
                skip_spaces();
            }
            if (p < body.size() && (body[p] == ':' || body[p] == '=' || body[p] == '-')) {
                ++p;
                skip_spaces();
            }
            std::size_t tok_end = p;
            while (tok_end < body.size() && !std::isspace(static_cast<unsigned char>(body[tok_end]))) {
                ++tok_end;
            }
            std::string token(body.substr(p, tok_end - p));
            if (token.size() >= 2 && ((token.front() == '"' && token.back() == '"') ||
                                      (token.front() == '\'' && token.back() == '\''))) {
                token = token.substr(1, token.size() - 2);
            }
            while (!token.empty() && (token.back() == '.' || token.back() == ',' ||
                                      token.back() == ';' || token.back() == ':' ||
                                      token.back() == '!' || token.back() == '?' ||
                                      token.back() == ')')) {
                token.pop_back();
            }
            if (token.empty()) continue;
            if (at < best_pos) {
                best_pos = at;
                best = token;
            }
            break;  // earliest hit for this label found
        }
    }
    if (best_pos == std::string::npos) return std::nullopt;
    return best;
}

}  // namespace

ExtractedDatapoints extract_datapoints(const Email& email, const FiatRateTable& rates,
                                       const ExtractConfig& config) {
    ExtractedDatapoints out;
    out.email_id = email.id;
    out.payment_addresses = extract_addresses(email.body);

    if (auto amount = scan_amount(email.body)) {
        out.amount = amount->cents;
        out.currency = amount->currency;
        if (amount->currency == "USD") {
            out.amount_usd = amount->cents;
        } else if (email.date_valid) {
            if (auto rate = rates.usd_per_unit(amount->currency, util::epoch_day(email.date))) {
                out.amount_usd = util::convert_cents(amount->cents, *rate);
            } else {
                out.missing_rate = true;
            }
        } else {
            out.missing_rate = true;  // no usable date, no daily rate
        }
    }

    out.password_or_phone = scan_secret(email.body, config.secret_labels);
    return out;
}

}  // namespace spamflow::corpus
