#include "spamflow/filters/filters.hpp"

#include <algorithm>

#include "spamflow/util/errors.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::filters {

util::Cents RansomAmountSet::window_lo() const {
    if (amounts.empty()) throw DataError("ransom amount set is empty");
    const util::Cents lo = *std::min_element(amounts.begin(), amounts.end());
    // (1-p) * min S, exact in integer arithmetic when p has 4 decimals
    return util::mul_div_round(lo, 10000 - p_basis_points, 10000);
}

util::Cents RansomAmountSet::window_hi() const {
    if (amounts.empty()) throw DataError("ransom amount set is empty");
    const util::Cents hi = *std::max_element(amounts.begin(), amounts.end());
    return util::mul_div_round(hi, 10000 + p_basis_points, 10000);
}

bool collector_filter_keeps(const chain::Transaction& tx, const std::set<std::string>& sextortion) {
    bool input_hit = false;
    for (const auto& in : tx.inputs) {
        if (sextortion.count(in.address)) {
            input_hit = true;
            break;
        }
    }
    if (!input_hit) return true;
    for (const auto& out : tx.outputs) {
        if (sextortion.count(out.address)) return false;  // internal money movement
    }
    return true;
}

bool moving_money_filter_keeps(const chain::Transaction& tx) {
    return tx.outputs.size() != 1;
}

bool range_filter_keeps(const PaymentRecord& payment, const RansomAmountSet& S) {
    if (!payment.value_usd) return false;  // unpriced payments are dropped, flagged upstream
    return *payment.value_usd >= S.window_lo() && *payment.value_usd <= S.window_hi();
}

std::vector<PaymentRecord> collect_payments(const chain::ChainStore& store,
                                            const std::set<std::string>& sextortion,
                                            const chain::PriceSeries& prices,
                                            const RansomAmountSet& S) {
    std::vector<PaymentRecord> records;
    for (std::size_t pos = 0; pos < store.transactions().size(); ++pos) {
        const auto& tx = store.transactions()[pos];
        if (tx.is_coinbase()) continue;
        const bool collector_keep = collector_filter_keeps(tx, sextortion);
        const bool moving_keep = moving_money_filter_keeps(tx);
        for (const auto& out : tx.outputs) {
            if (!sextortion.count(out.address)) continue;
            PaymentRecord rec;
            rec.ref = {tx.tx_id, out.index};
            rec.address = out.address;
            rec.timestamp = tx.timestamp;
            rec.value_sat = out.value_sat;
            try {
                rec.value_usd = prices.value_usd(out.value_sat, tx.timestamp);
            } catch (const MissingPriceError&) {
                rec.missing_price = true;  // dropped by range, never silently kept
            }
            if (collector_keep) rec.passed |= static_cast<std::uint8_t>(Filter::collector);
            if (moving_keep) rec.passed |= static_cast<std::uint8_t>(Filter::moving_money);
            if (range_filter_keeps(rec, S)) rec.passed |= static_cast<std::uint8_t>(Filter::range);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

RevenueReport revenue_report(const std::vector<PaymentRecord>& payments, FilterCombo combo,
                             const std::map<std::string, int>* component_of_address) {
    RevenueReport report;
    report.combo = combo;

    std::map<std::string, MonthlyRow> monthly;
    std::map<int, ComponentRow> components;
    for (const auto& rec : payments) {
        if (!rec.kept(combo)) continue;
        ++report.payments;
        const util::Cents usd = rec.value_usd.value_or(0);
        report.usd += usd;
        report.sat += rec.value_sat;

        MonthlyRow& row = monthly[util::format_month(rec.timestamp)];
        ++row.payments;
        row.usd += usd;
        row.sat += rec.value_sat;

        if (component_of_address) {
            auto it = component_of_address->find(rec.address);
            const int comp = it == component_of_address->end() ? -1 : it->second;
            ComponentRow& crow = components[comp];
            crow.component = comp;
            ++crow.payments;
            crow.usd += usd;
            crow.sat += rec.value_sat;
        }
    }

    util::Cents running = 0;
    for (auto& [month, row] : monthly) {
        row.month = month;
        running += row.usd;
        row.cumulative_usd = running;
        report.monthly.push_back(row);
    }

    for (auto& [comp, row] : components) {
        row.usd_share = report.usd == 0 ? 0.0
                                        : static_cast<double>(row.usd) /
                                              static_cast<double>(report.usd);
        report.components.push_back(row);
    }
    std::sort(report.components.begin(), report.components.end(),
              [](const ComponentRow& a, const ComponentRow& b) {
                  if (a.usd != b.usd) return a.usd > b.usd;
                  return a.component < b.component;
              });
    return report;
}

}  // namespace spamflow::filters
