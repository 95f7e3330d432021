#include <doctest.h>

#include "helpers.hpp"
#include "spamflow/filters/filters.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/time.hpp"

using namespace spamflow;
using helpers::coinbase;
using helpers::input;
using helpers::tx;

namespace {

const std::int64_t t0 = util::parse_datetime("2018-09-01T00:00:00Z");

chain::PriceSeries fixed_price() {
    chain::PriceSeries prices;
    for (std::int64_t d = util::epoch_day(t0) - 30; d < util::epoch_day(t0) + 60; ++d) {
        prices.add(d, 4000'0000);
    }
    return prices;
}

}  // namespace

TEST_CASE("collector filter drops internal movement only") {
    const std::set<std::string> sext = {"S1", "S2"};
    // victim -> sextortion: keep
    auto victim_pay = tx("p", t0, {input("V", 100, "f", 0)}, {{"S1", 50}, {"V", 49}});
    CHECK(filters::collector_filter_keeps(victim_pay, sext));
    // sextortion -> sextortion: drop
    auto internal = tx("i", t0, {input("S1", 50, "p", 0)}, {{"S2", 30}, {"S1", 19}});
    CHECK_FALSE(filters::collector_filter_keeps(internal, sext));
    // sextortion -> external only: keep (outgoing spend, flows handles it)
    auto outgoing = tx("o", t0, {input("S1", 50, "p", 0)}, {{"EX", 49}});
    CHECK(filters::collector_filter_keeps(outgoing, sext));
}

TEST_CASE("moving-money filter drops single-output transactions") {
    auto sweep = tx("s", t0, {input("A", 100, "f", 0)}, {{"B", 99}});
    CHECK_FALSE(filters::moving_money_filter_keeps(sweep));
    auto with_change = tx("c", t0, {input("A", 100, "f", 0)}, {{"B", 50}, {"A", 49}});
    CHECK(filters::moving_money_filter_keeps(with_change));
    auto cb = coinbase("cb", t0, {{"A", 100}});
    CHECK_FALSE(filters::moving_money_filter_keeps(cb));
}

TEST_CASE("range window arithmetic is exact at the boundaries") {
    filters::RansomAmountSet S;
    S.amounts = {20000, 55000, 700000};  // $200 .. $7,000
    CHECK(S.window_lo() == 18000);       // $180.00
    CHECK(S.window_hi() == 770000);      // $7,700.00

    filters::PaymentRecord rec;
    rec.value_usd = 17999;
    CHECK_FALSE(filters::range_filter_keeps(rec, S));
    rec.value_usd = 18000;
    CHECK(filters::range_filter_keeps(rec, S));
    rec.value_usd = 770000;
    CHECK(filters::range_filter_keeps(rec, S));
    rec.value_usd = 770001;
    CHECK_FALSE(filters::range_filter_keeps(rec, S));
    rec.value_usd.reset();  // unpriced payments never pass
    CHECK_FALSE(filters::range_filter_keeps(rec, S));

    filters::RansomAmountSet empty;
    rec.value_usd = 18000;
    CHECK_THROWS_AS(filters::range_filter_keeps(rec, empty), DataError);
}

TEST_CASE("collect_payments records every incoming output with audit flags") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("f", t0, {{"V1", 20'000'000}, {"V2", 20'000'000}, {"S1", 5'000'000}}));
    // in-window victim payment with change ($500)
    txs.push_back(tx("p1", t0 + 3600, {input("V1", 20'000'000, "f", 0)},
                     {{"S1", 12'500'000}, {"V1", 7'499'000}}));
    // single-output exact-amount payment ($600)
    txs.push_back(tx("p2", t0 + 7200, {input("V2", 20'000'000, "f", 1)}, {{"S2", 15'000'000}}));
    // internal transfer S1 -> S2 ($200, in window, collector-dropped)
    txs.push_back(tx("p3", t0 + 9000, {input("S1", 5'000'000, "f", 2)},
                     {{"S2", 5'000'000 - 1000 - 1'000'000}, {"S1", 1'000'000}}));
    const auto store = chain::ChainStore::ingest(std::move(txs));

    filters::RansomAmountSet S;
    S.amounts = {45000, 60000};  // window [$405, $660]
    const auto prices = fixed_price();
    const auto records = filters::collect_payments(store, {"S1", "S2"}, prices, S);

    REQUIRE(records.size() == 4);  // p1:0, p2:0, p3:0, p3:1

    const auto& p1 = records[0];
    CHECK(p1.ref.tx_id == "p1");
    CHECK(p1.value_usd == 50000);
    CHECK(p1.kept(filters::FilterCombo::one_two));
    CHECK(p1.kept(filters::FilterCombo::one_two_three));

    const auto& p2 = records[1];
    CHECK(p2.value_usd == 60000);
    CHECK(p2.kept(filters::FilterCombo::one_two));
    CHECK_FALSE(p2.kept(filters::FilterCombo::one_two_three));  // single output

    const auto& p3a = records[2];
    CHECK_FALSE(p3a.passed_filter(filters::Filter::collector));
    CHECK_FALSE(p3a.kept(filters::FilterCombo::one_two));
    // audit trail survives rejection
    CHECK(p3a.passed_filter(filters::Filter::moving_money));
}

TEST_CASE("filter monotonicity holds on random ledgers") {
    util::Rng rng(53);
    const auto prices = [] {
        chain::PriceSeries p;
        for (std::int64_t d = util::parse_date("2018-06-01"); d < util::parse_date("2018-09-01");
             ++d) {
            p.add(d, 4000'0000);
        }
        return p;
    }();
    std::size_t nonempty = 0;
    for (int round = 0; round < 60; ++round) {
        const auto txs = helpers::random_ledger(rng, 40, 12);
        const auto store = chain::ChainStore::ingest(txs);
        // a couple of random addresses act as the sextortion set
        std::set<std::string> sext = {"addr0", "addr" + std::to_string(rng.below(12))};
        filters::RansomAmountSet S;
        S.amounts = {100000, 4'000'000};  // wide window, many keeps
        const auto records = filters::collect_payments(store, sext, prices, S);

        std::set<std::pair<std::string, std::uint32_t>> kept12, kept123;
        util::Cents usd12 = 0, usd123 = 0;
        for (const auto& rec : records) {
            if (rec.kept(filters::FilterCombo::one_two)) {
                kept12.insert({rec.ref.tx_id, rec.ref.index});
                usd12 += rec.value_usd.value_or(0);
            }
            if (rec.kept(filters::FilterCombo::one_two_three)) {
                kept123.insert({rec.ref.tx_id, rec.ref.index});
                usd123 += rec.value_usd.value_or(0);
                CHECK(rec.kept(filters::FilterCombo::one_two));
            }
        }
        CHECK(std::includes(kept12.begin(), kept12.end(), kept123.begin(), kept123.end()));
        CHECK(usd123 <= usd12);
        if (!kept12.empty()) ++nonempty;
    }
    CHECK(nonempty > 10);  // the property suite actually exercised keeps
}

TEST_CASE("revenue report aggregates by month and conserves totals") {
    std::vector<filters::PaymentRecord> records;
    auto make = [&](const char* ts, util::Cents usd, util::Satoshi sat, const char* addr) {
        filters::PaymentRecord rec;
        rec.ref = {"t" + std::to_string(records.size()), 0};
        rec.address = addr;
        rec.timestamp = util::parse_datetime(ts);
        rec.value_sat = sat;
        rec.value_usd = usd;
        rec.passed = combo_mask(filters::FilterCombo::one_two_three);
        records.push_back(rec);
    };
    make("2018-09-10T00:00:00Z", 50000, 12'500'000, "A");
    make("2018-09-20T00:00:00Z", 30000, 7'500'000, "A");
    make("2018-10-01T00:00:00Z", 20000, 5'000'000, "B");

    const auto report = filters::revenue_report(records, filters::FilterCombo::one_two);
    CHECK(report.payments == 3);
    CHECK(report.usd == 100000);
    CHECK(report.sat == 25'000'000);
    REQUIRE(report.monthly.size() == 2);
    CHECK(report.monthly[0].month == "2018-09");
    CHECK(report.monthly[0].usd == 80000);
    CHECK(report.monthly[1].cumulative_usd == 100000);

    util::Cents monthly_sum = 0;
    for (const auto& row : report.monthly) monthly_sum += row.usd;
    CHECK(monthly_sum == report.usd);

    std::map<std::string, int> comp = {{"A", 0}, {"B", 1}};
    const auto split = filters::revenue_report(records, filters::FilterCombo::one_two, &comp);
    REQUIRE(split.components.size() == 2);
    CHECK(split.components[0].component == 0);
    CHECK(split.components[0].usd == 80000);
    CHECK(split.components[0].usd_share == doctest::Approx(0.8));

    const auto empty = filters::revenue_report({}, filters::FilterCombo::one_two);
    CHECK(empty.payments == 0);
    CHECK(empty.usd == 0);
    CHECK(empty.monthly.empty());
}
