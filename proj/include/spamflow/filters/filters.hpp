#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spamflow/chain/chainstore.hpp"
#include "spamflow/util/money.hpp"

namespace spamflow::filters {

enum class Filter : std::uint8_t {
    collector = 1 << 0,
    range = 1 << 1,
    moving_money = 1 << 2,
};

enum class FilterCombo { one_two, one_two_three };

constexpr std::uint8_t combo_mask(FilterCombo combo) {
    return combo == FilterCombo::one_two
               ? (static_cast<std::uint8_t>(Filter::collector) | static_cast<std::uint8_t>(Filter::range))
               : (static_cast<std::uint8_t>(Filter::collector) |
                  static_cast<std::uint8_t>(Filter::range) |
                  static_cast<std::uint8_t>(Filter::moving_money));
}

// Ransom amounts harvested from the corpus, with the tolerance window
// [(1-p) * min S, (1+p) * max S]. p is held in basis points so the window
// bounds stay exact in cents.
struct RansomAmountSet {
    std::vector<util::Cents> amounts;
    std::int64_t p_basis_points = 1000;  // p = 0.1

    util::Cents window_lo() const;
    util::Cents window_hi() const;
};

// One output paying an address of the expanded set. Filter outcomes are
// recorded for every record, kept or not, as the audit trail.
struct PaymentRecord {
    chain::OutputRef ref;
    std::string address;
    std::int64_t timestamp = 0;
    util::Satoshi value_sat = 0;
    std::optional<util::Cents> value_usd;
    bool missing_price = false;
    std::uint8_t passed = 0;  // bitmask of Filter

    bool passed_filter(Filter f) const { return passed & static_cast<std::uint8_t>(f); }
    bool kept(FilterCombo combo) const { return (passed & combo_mask(combo)) == combo_mask(combo); }
};

// Filter predicates. "Drop" decisions:
//   collector:    at least one sextortion address among inputs AND outputs
//   moving-money: exactly one output
//   range:        USD value outside the tolerance window (or unpriced)
bool collector_filter_keeps(const chain::Transaction& tx, const std::set<std::string>& sextortion);
bool moving_money_filter_keeps(const chain::Transaction& tx);
bool range_filter_keeps(const PaymentRecord& payment, const RansomAmountSet& S);

// Enumerates every incoming output to the expanded address set and applies
// all three filters, recording per-record outcomes. Coinbase outputs are
// skipped (mined, not paid). Requires a nonempty S unless no record needs
// range evaluation.
std::vector<PaymentRecord> collect_payments(const chain::ChainStore& store,
                                            const std::set<std::string>& sextortion,
                                            const chain::PriceSeries& prices,
                                            const RansomAmountSet& S);

struct MonthlyRow {
    std::string month;  // "YYYY-MM"
    std::size_t payments = 0;
    util::Cents usd = 0;
    util::Satoshi sat = 0;
    util::Cents cumulative_usd = 0;
};

struct ComponentRow {
    int component = 0;
    std::size_t payments = 0;
    util::Cents usd = 0;
    util::Satoshi sat = 0;
    double usd_share = 0.0;
};

struct RevenueReport {
    FilterCombo combo{};
    std::size_t payments = 0;
    util::Cents usd = 0;
    util::Satoshi sat = 0;
    std::vector<MonthlyRow> monthly;       // ascending month
    std::vector<ComponentRow> components;  // descending usd, when map supplied
};

// Totals and UTC-calendar-month series over the records kept by `combo`.
// When `component_of_address` is given, revenue is also split by linkage
// component (addresses missing from the map aggregate under component -1).
RevenueReport revenue_report(const std::vector<PaymentRecord>& payments, FilterCombo combo,
                             const std::map<std::string, int>* component_of_address = nullptr);

}  // namespace spamflow::filters
