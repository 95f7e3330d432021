#include <doctest.h>

#include "oracles.hpp"
#include "spamflow/corpus/extract.hpp"
#include "spamflow/util/base58.hpp"
#include "spamflow/util/rng.hpp"
#include "spamflow/util/time.hpp"

using namespace spamflow;

namespace {

corpus::Email with_body(std::string body, const std::string& date = "2018-10-05T12:00:00Z") {
    corpus::Email e;
    e.id = "e1";
    e.body = std::move(body);
    e.date_valid = util::try_parse_datetime(date, e.date);
    return e;
}

std::string fresh_address(util::Rng& rng, std::uint8_t version = 0x00) {
    std::array<std::uint8_t, 20> h{};
    for (auto& b : h) b = static_cast<std::uint8_t>(rng.below(256));
    return util::encode_p2pkh_like(version, std::span<const std::uint8_t>(h));
}

}  // namespace

TEST_CASE("valid addresses are extracted, corrupted ones are not") {
    const std::string valid = "1A1zP1eP5QGefi2DMPTfTL5SLmv7DivfNa";
    auto found = corpus::extract_addresses("send btc to " + valid + " today");
    REQUIRE(found.size() == 1);
    CHECK(found[0] == valid);

    std::string corrupted = valid;
    corrupted[10] = corrupted[10] == 'Q' ? 'R' : 'Q';
    CHECK(corpus::extract_addresses("send btc to " + corrupted + " today").empty());
}

TEST_CASE("address scan handles punctuation boundaries and duplicates") {
    util::Rng rng(3);
    const std::string a1 = fresh_address(rng);
    const std::string a2 = fresh_address(rng, 0x05);
    const auto found =
        corpus::extract_addresses("wallet: " + a1 + ", backup (" + a2 + ") or " + a1 + ".");
    REQUIRE(found.size() == 2);  // first-seen order, de-duplicated
    CHECK(found[0] == a1);
    CHECK(found[1] == a2);
}

TEST_CASE("address extraction never emits a checksum-invalid string") {
    util::Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        // random base58 noise around a valid or mutated address
        std::string addr = fresh_address(rng);
        if (i % 2) {
            static const char b58[] =
                "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
            addr[rng.below(addr.size())] = b58[rng.below(58)];
        }
        const auto found = corpus::extract_addresses("x " + addr + " y");
        for (const auto& f : found) {
            CHECK(util::base58check_address_valid(f));
            CHECK(oracles::base58check_address_valid(f));
        }
    }
}

TEST_CASE("amounts parse from symbols and codes with separators") {
    corpus::FiatRateTable rates;
    rates.add(util::epoch_day(util::parse_datetime("2018-10-05T12:00:00Z")), "EUR", 1'140'000);

    auto dp = corpus::extract_datapoints(with_body("you must pay $7,000 in 48 hours"), rates);
    REQUIRE(dp.amount.has_value());
    CHECK(*dp.amount == 700000);
    CHECK(dp.currency == "USD");
    CHECK(*dp.amount_usd == 700000);

    dp = corpus::extract_datapoints(with_body("send 280 EUR to the wallet"), rates);
    REQUIRE(dp.amount.has_value());
    CHECK(*dp.amount == 28000);
    CHECK(dp.currency == "EUR");
    CHECK(*dp.amount_usd == 31920);  // 280 * 1.14
    CHECK_FALSE(dp.missing_rate);

    dp = corpus::extract_datapoints(with_body("transfer exactly 550.50 USD"), rates);
    CHECK(*dp.amount == 55050);

    dp = corpus::extract_datapoints(with_body("no money mentioned here"), rates);
    CHECK_FALSE(dp.amount.has_value());
    CHECK_FALSE(dp.amount_usd.has_value());
}

TEST_CASE("missing fiat rate is flagged, never silently converted") {
    corpus::FiatRateTable rates;  // empty
    const auto dp = corpus::extract_datapoints(with_body("pay 2000 NOK now"), rates);
    REQUIRE(dp.amount.has_value());
    CHECK(dp.currency == "NOK");
    CHECK_FALSE(dp.amount_usd.has_value());
    CHECK(dp.missing_rate);
}

TEST_CASE("digits inside addresses are not amounts") {
    corpus::FiatRateTable rates;
    util::Rng rng(5);
    const std::string addr = fresh_address(rng);
    const auto dp = corpus::extract_datapoints(with_body("wallet " + addr + " waits"), rates);
    CHECK_FALSE(dp.amount.has_value());
    CHECK(dp.payment_addresses == std::vector<std::string>{addr});
}

TEST_CASE("passwords and phones are captured from labeled delimiters") {
    corpus::FiatRateTable rates;
    auto dp = corpus::extract_datapoints(with_body("Your password: hunter2! Do not change it."),
                                         rates);
    REQUIRE(dp.password_or_phone.has_value());
    CHECK(*dp.password_or_phone == "hunter2");

    dp = corpus::extract_datapoints(with_body("your phone number: +15551234567, we know it"),
                                    rates);
    REQUIRE(dp.password_or_phone.has_value());
    CHECK(*dp.password_or_phone == "+15551234567");

    dp = corpus::extract_datapoints(with_body("wordplay on passwords alone"), rates);
    CHECK_FALSE(dp.password_or_phone.has_value());
}

TEST_CASE("fiat rate table loads and is date-keyed") {
    corpus::FiatRateTable rates;
    const auto d1 = util::parse_date("2018-10-05");
    rates.add(d1, "EUR", 1'140'000);
    CHECK(rates.usd_per_unit("EUR", d1) == 1'140'000);
    CHECK_FALSE(rates.usd_per_unit("EUR", d1 + 1).has_value());
    CHECK_FALSE(rates.usd_per_unit("GBP", d1).has_value());
}
