#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spamflow/corpus/email.hpp"
#include "spamflow/util/money.hpp"

namespace spamflow::corpus {

// Daily fiat->USD conversion table, keyed by (currency, epoch day).
// Loaded from CSV `date,currency,usd_per_unit`.
class FiatRateTable {
public:
    static FiatRateTable load_csv(const std::string& path);

    void add(std::int64_t day, const std::string& currency, util::RateE6 usd_per_unit);
    std::optional<util::RateE6> usd_per_unit(const std::string& currency, std::int64_t day) const;

    bool empty() const { return rates_.empty(); }

private:
    std::map<std::pair<std::string, std::int64_t>, util::RateE6> rates_;
};

struct ExtractConfig {
    // Labels announcing the victim's leaked secret; matched case-insensitively
    // at word boundaries, followed by an optional ':'/'='/'-' and the secret.
    std::vector<std::string> secret_labels = {"password", "passwd", "pwd", "passphrase", "phone"};
};

struct ExtractedDatapoints {
    std::string email_id;
    std::vector<std::string> payment_addresses;  // checksum-validated, first-seen order
    std::optional<util::Cents> amount;           // in `currency` units
    std::string currency;                        // USD, EUR, GBP or NOK when amount set
    std::optional<util::Cents> amount_usd;
    bool missing_rate = false;  // amount present but no fiat rate for the email date
    std::optional<std::string> password_or_phone;
};

// Pulls payment addresses, the ransom amount and the leaked secret out of an
// email body. Addresses must match [13][base58]{25,34} and carry a valid
// Base58Check checksum. A non-USD amount converts at the email-date daily
// rate; a missing rate leaves amount_usd unset and flags the record.
ExtractedDatapoints extract_datapoints(const Email& email, const FiatRateTable& rates,
                                       const ExtractConfig& config = {});

// Address scan alone (exposed for fuzz tests).
std::vector<std::string> extract_addresses(std::string_view body);

}  // namespace spamflow::corpus
