#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "spamflow/util/money.hpp"

namespace spamflow::chain {

struct OutputRef {
    std::string tx_id;
    std::uint32_t index = 0;

    friend auto operator<=>(const OutputRef&, const OutputRef&) = default;
};

struct TxInput {
    std::string address;
    util::Satoshi value_sat = 0;
    OutputRef spends;
};

struct TxOutput {
    std::uint32_t index = 0;
    std::string address;
    util::Satoshi value_sat = 0;
};

struct Transaction {
    std::string tx_id;
    std::int64_t timestamp = 0;
    std::vector<TxInput> inputs;  // empty for coinbase
    std::vector<TxOutput> outputs;

    bool is_coinbase() const { return inputs.empty(); }
    util::Satoshi total_in() const;
    util::Satoshi total_out() const;
};

// Location of the input that spends an output.
struct SpendRef {
    std::size_t tx_pos = 0;  // position in the store's transaction list
    std::size_t input_pos = 0;
};

struct IngestOptions {
    bool check_fees = true;  // enforce sum(in) >= sum(out) on non-coinbase txs
    std::optional<std::int64_t> cutoff_timestamp;  // drop txs strictly after
};

// Immutable indexed view of a transaction-ledger export. Build once with
// ingest(); afterwards any number of readers may query concurrently.
class ChainStore {
public:
    static ChainStore ingest_file(const std::string& path, const IngestOptions& opts = {});
    static ChainStore ingest(std::vector<Transaction> txs, const IngestOptions& opts = {},
                             const std::string& source_name = "<memory>");

    const std::vector<Transaction>& transactions() const { return txs_; }
    const Transaction* find_tx(const std::string& tx_id) const;

    // Transactions with an output paying `address`, in ledger order.
    const std::vector<std::size_t>& incoming(const std::string& address) const;
    // Transactions with an input spending from `address`, in ledger order.
    const std::vector<std::size_t>& outgoing(const std::string& address) const;

    std::optional<SpendRef> spender_of(const OutputRef& ref) const;
    const TxOutput* resolve(const OutputRef& ref) const;

    // Value-identical JSONL re-emission (same order as ingested).
    void export_jsonl(std::ostream& out) const;

private:
    std::vector<Transaction> txs_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::vector<std::size_t>> incoming_;
    std::unordered_map<std::string, std::vector<std::size_t>> outgoing_;
    std::map<OutputRef, SpendRef> spenders_;

    void build_indexes(const std::string& source_name, bool check_fees);
};

// Daily USD close per BTC, from CSV `date,usd_per_btc`.
class PriceSeries {
public:
    static PriceSeries load_csv(const std::string& path);

    void add(std::int64_t day, util::PriceE4 usd_per_btc);
    std::optional<util::PriceE4> price_at_day(std::int64_t day) const;

    // satoshis valued at the daily close of the timestamp's UTC date.
    // Throws MissingPriceError when the date is not covered.
    util::Cents value_usd(util::Satoshi sat, std::int64_t at_epoch_seconds) const;

    bool empty() const { return prices_.empty(); }

private:
    std::map<std::int64_t, util::PriceE4> prices_;
};

}  // namespace spamflow::chain
