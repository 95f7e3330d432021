#include <doctest.h>

#include "oracles.hpp"
#include "spamflow/util/base58.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/money.hpp"
#include "spamflow/util/rng.hpp"
#include "spamflow/util/sha256.hpp"
#include "spamflow/util/time.hpp"

using namespace spamflow;

TEST_CASE("sha256 matches the FIPS vectors and OpenSSL") {
    CHECK(util::hex(util::sha256(std::string_view(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(util::hex(util::sha256(std::string_view("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(util::hex(util::sha256(std::string_view(
              "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");

    util::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        std::string data;
        const auto len = rng.below(300);
        for (std::uint64_t k = 0; k < len; ++k) {
            data.push_back(static_cast<char>(rng.below(256)));
        }
        CHECK(util::hex(util::sha256(std::string_view(data))) ==
              oracles::openssl_sha256_hex(data));
    }
}

TEST_CASE("base58check encoding round-trips and validates") {
    // the best-known P2PKH address
    CHECK(util::base58check_address_valid("1A1zP1eP5QGefi2DMPTfTL5SLmv7DivfNa"));
    CHECK(oracles::base58check_address_valid("1A1zP1eP5QGefi2DMPTfTL5SLmv7DivfNa"));
    CHECK_FALSE(util::base58check_address_valid("1A1zP1eP5QGefi2DMPTfTL5SLmv7DivfNb"));
    CHECK_FALSE(util::base58check_address_valid(""));
    CHECK_FALSE(util::base58check_address_valid("0OIl"));

    util::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        std::array<std::uint8_t, 20> hash{};
        for (auto& b : hash) b = static_cast<std::uint8_t>(rng.below(256));
        const std::string addr =
            util::encode_p2pkh_like(i % 2 ? 0x05 : 0x00, std::span<const std::uint8_t>(hash));
        CHECK((addr.front() == '1' || addr.front() == '3'));
        CHECK(util::base58check_address_valid(addr));
        CHECK(oracles::base58check_address_valid(addr));
    }
}

TEST_CASE("base58 rejects agree with the GMP+OpenSSL oracle on mutations") {
    util::Rng rng(13);
    static const char b58[] = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
    for (int i = 0; i < 500; ++i) {
        std::array<std::uint8_t, 20> hash{};
        for (auto& b : hash) b = static_cast<std::uint8_t>(rng.below(256));
        std::string addr = util::encode_p2pkh_like(0x00, std::span<const std::uint8_t>(hash));
        const auto pos = rng.below(addr.size());
        char replacement = b58[rng.below(58)];
        while (replacement == addr[pos]) replacement = b58[rng.below(58)];
        addr[pos] = replacement;
        CHECK(util::base58check_address_valid(addr) == oracles::base58check_address_valid(addr));
    }
}

TEST_CASE("civil date conversions round-trip") {
    CHECK(util::days_from_civil(1970, 1, 1) == 0);
    CHECK(util::days_from_civil(2018, 6, 1) == 17683);
    for (std::int64_t day : {-1000, 0, 17683, 20000}) {
        int y;
        unsigned m, d;
        util::civil_from_days(day, y, m, d);
        CHECK(util::days_from_civil(y, m, d) == day);
    }
    CHECK(util::format_date(util::parse_datetime("2018-12-02T14:30:00Z")) == "2018-12-02");
    CHECK(util::format_datetime(util::parse_datetime("2018-12-02 14:30:00")) ==
          "2018-12-02T14:30:00Z");
    CHECK(util::format_month(util::parse_datetime("2019-01-31T23:59:59Z")) == "2019-01");
    CHECK_THROWS_AS(util::parse_datetime("not a date"), DataError);
    CHECK_THROWS_AS(util::parse_date("2018-13-01"), DataError);

    std::int64_t epoch = -1;
    CHECK_FALSE(util::try_parse_datetime("2018-02-30x", epoch));
    CHECK(util::try_parse_datetime("2018-06-01", epoch));
    CHECK(epoch == 17683 * util::seconds_per_day);
}

TEST_CASE("scaled decimal parsing and formatting") {
    CHECK(util::parse_usd("1234.56") == 123456);
    CHECK(util::parse_usd("1234") == 123400);
    CHECK(util::parse_usd("-0.5") == -50);
    CHECK(util::parse_usd("0.005") == 1);  // rounds half away from zero
    CHECK(util::parse_scaled_decimal("1.14", 6) == 1140000);
    CHECK(util::parse_scaled_decimal("4000.2518", 4) == 40002518);
    CHECK_THROWS_AS(util::parse_usd("12a"), DataError);
    CHECK_THROWS_AS(util::parse_usd(""), DataError);

    CHECK(util::format_usd(123456) == "1234.56");
    CHECK(util::format_usd(-50) == "-0.50");
    CHECK(util::format_btc(281'77600000LL) == "281.77600000");
    CHECK(util::format_scaled_decimal(1000, 4) == "0.1000");
}

TEST_CASE("satoshi valuation is exact integer arithmetic") {
    // 1 BTC at $4,000.00
    CHECK(util::sat_to_usd_cents(100'000'000, 4000'0000) == 400000);
    CHECK(util::sat_to_usd_cents(0, 4000'0000) == 0);
    // $280 EUR at 1.14
    CHECK(util::convert_cents(28000, 1'140'000) == 31920);
    // rounding is half away from zero
    CHECK(util::sat_to_usd_cents(1, 4000'0000) == 0);
    CHECK(util::sat_to_usd_cents(13, 4000'0000) == 1);
}

TEST_CASE("rng sampling is deterministic and unbiased at the edges") {
    util::Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    util::Rng rng(5);
    const auto idx = rng.sample_indices(10, 4);
    CHECK(idx.size() == 4);
    for (auto v : idx) CHECK(v < 10);
    const auto all = util::Rng(5).sample_indices(3, 10);
    CHECK(all.size() == 3);
}
