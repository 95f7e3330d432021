#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "spamflow/chain/chainstore.hpp"
#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/time.hpp"

using namespace spamflow;
using helpers::coinbase;
using helpers::input;
using helpers::tx;

namespace {

const std::int64_t t0 = util::parse_datetime("2018-09-01T00:00:00Z");

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    util::write_file(path, content);
    return path;
}

}  // namespace

TEST_CASE("empty ledger ingests to an empty store") {
    const auto store = chain::ChainStore::ingest(std::vector<chain::Transaction>{});
    CHECK(store.transactions().empty());
    CHECK(store.incoming("anything").empty());
}

TEST_CASE("indexes answer incoming, outgoing and spender queries") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("cb", t0, {{"A", 100'000'000}}));
    txs.push_back(tx("t1", t0 + 3600, {input("A", 100'000'000, "cb", 0)},
                     {{"B", 60'000'000}, {"A", 39'999'000}}));
    const auto store = chain::ChainStore::ingest(std::move(txs));

    CHECK(store.incoming("B").size() == 1);
    CHECK(store.incoming("A").size() == 2);   // coinbase + change
    CHECK(store.outgoing("A").size() == 1);
    CHECK(store.outgoing("B").empty());

    const auto spend = store.spender_of({"cb", 0});
    REQUIRE(spend.has_value());
    CHECK(store.transactions()[spend->tx_pos].tx_id == "t1");
    CHECK_FALSE(store.spender_of({"t1", 0}).has_value());

    const auto* out = store.resolve({"t1", 1});
    REQUIRE(out != nullptr);
    CHECK(out->address == "A");
}

TEST_CASE("double spends abort ingestion") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("cb", t0, {{"A", 100'000'000}}));
    txs.push_back(tx("t1", t0 + 1, {input("A", 100'000'000, "cb", 0)}, {{"B", 99'999'000}}));
    txs.push_back(tx("t2", t0 + 2, {input("A", 100'000'000, "cb", 0)}, {{"C", 99'999'000}}));
    CHECK_THROWS_AS(chain::ChainStore::ingest(std::move(txs)), DoubleSpendError);
}

TEST_CASE("duplicate tx ids and fee violations are schema errors") {
    {
        std::vector<chain::Transaction> txs;
        txs.push_back(coinbase("dup", t0, {{"A", 1}}));
        txs.push_back(coinbase("dup", t0 + 1, {{"B", 1}}));
        CHECK_THROWS_AS(chain::ChainStore::ingest(std::move(txs)), SchemaError);
    }
    {
        std::vector<chain::Transaction> txs;
        txs.push_back(coinbase("cb", t0, {{"A", 1000}}));
        txs.push_back(tx("bad", t0 + 1, {input("A", 1000, "cb", 0)}, {{"B", 2000}}));
        CHECK_THROWS_AS(chain::ChainStore::ingest(std::move(txs)), DataError);
    }
    {
        // fee checking can be disabled
        std::vector<chain::Transaction> txs;
        txs.push_back(coinbase("cb", t0, {{"A", 1000}}));
        txs.push_back(tx("odd", t0 + 1, {input("A", 1000, "cb", 0)}, {{"B", 2000}}));
        chain::IngestOptions opts;
        opts.check_fees = false;
        CHECK_NOTHROW(chain::ChainStore::ingest(std::move(txs), opts));
    }
}

TEST_CASE("ledger file round-trips through export") {
    const std::string jsonl =
        R"({"tx_id":"cb","timestamp":"2018-09-01T00:00:00Z","inputs":[],"outputs":[{"index":0,"address":"A","value_sat":100000000}]})"
        "\n"
        R"({"tx_id":"t1","timestamp":"2018-09-01T01:00:00Z","inputs":[{"address":"A","value_sat":100000000,"spends":{"tx_id":"cb","index":0}}],"outputs":[{"index":0,"address":"B","value_sat":99999000}]})"
        "\n";
    const auto path = temp_file("sf_ledger_roundtrip.jsonl", jsonl);
    const auto store = chain::ChainStore::ingest_file(path);
    REQUIRE(store.transactions().size() == 2);

    std::ostringstream exported;
    store.export_jsonl(exported);
    const auto again = chain::ChainStore::ingest_file(
        temp_file("sf_ledger_roundtrip2.jsonl", exported.str()));
    REQUIRE(again.transactions().size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& a = store.transactions()[i];
        const auto& b = again.transactions()[i];
        CHECK(a.tx_id == b.tx_id);
        CHECK(a.timestamp == b.timestamp);
        CHECK(a.inputs.size() == b.inputs.size());
        CHECK(a.outputs.size() == b.outputs.size());
        for (std::size_t k = 0; k < a.outputs.size(); ++k) {
            CHECK(a.outputs[k].value_sat == b.outputs[k].value_sat);
            CHECK(a.outputs[k].address == b.outputs[k].address);
        }
    }
}

TEST_CASE("schema errors carry the offending line") {
    const auto path = temp_file("sf_ledger_bad.jsonl",
                                "{\"tx_id\":\"a\",\"timestamp\":\"2018-09-01\",\"outputs\":[]}\n"
                                "this is not json\n");
    try {
        chain::ChainStore::ingest_file(path);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.line_number == 2);
    }
}

TEST_CASE("cutoff timestamp drops later transactions") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("cb1", t0, {{"A", 1}}));
    txs.push_back(coinbase("cb2", t0 + 7200, {{"B", 1}}));
    chain::IngestOptions opts;
    opts.cutoff_timestamp = t0 + 3600;
    const auto store = chain::ChainStore::ingest(std::move(txs), opts);
    CHECK(store.transactions().size() == 1);
    CHECK(store.transactions()[0].tx_id == "cb1");
}

TEST_CASE("indexes agree with a brute-force scan on random ledgers") {
    util::Rng rng(23);
    for (int round = 0; round < 20; ++round) {
        auto txs = helpers::random_ledger(rng, 60, 20);
        const auto store = chain::ChainStore::ingest(txs);

        for (std::size_t i = 0; i < 10; ++i) {
            const std::string addr = "addr" + std::to_string(rng.below(20));
            std::vector<std::size_t> incoming, outgoing;
            for (std::size_t pos = 0; pos < txs.size(); ++pos) {
                bool in_hit = false, out_hit = false;
                for (const auto& o : txs[pos].outputs) in_hit |= o.address == addr;
                for (const auto& in : txs[pos].inputs) out_hit |= in.address == addr;
                if (in_hit) incoming.push_back(pos);
                if (out_hit) outgoing.push_back(pos);
            }
            CHECK(store.incoming(addr) == incoming);
            CHECK(store.outgoing(addr) == outgoing);
        }
    }
}

TEST_CASE("price series values satoshis at the daily close") {
    chain::PriceSeries prices;
    prices.add(util::parse_date("2018-09-01"), 4000'0000);
    CHECK(prices.value_usd(100'000'000, t0) == 400000);          // $4,000.00
    CHECK(prices.value_usd(0, t0) == 0);
    CHECK(prices.value_usd(12'500'000, t0 + 7200) == 50000);     // $500.00
    CHECK_THROWS_AS(prices.value_usd(1, t0 + 2 * 86400), MissingPriceError);
    CHECK_THROWS_AS(prices.add(util::parse_date("2018-09-01"), 1), DataError);
    CHECK_THROWS_AS(prices.add(util::parse_date("2018-09-02"), 0), DataError);
}
