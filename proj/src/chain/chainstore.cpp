#include "spamflow/chain/chainstore.hpp"

#include <fstream>

#include <json.hpp>

#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::chain {

util::Satoshi Transaction::total_in() const {
    util::Satoshi sum = 0;
    for (const auto& in : inputs) sum += in.value_sat;
    return sum;
}

util::Satoshi Transaction::total_out() const {
    util::Satoshi sum = 0;
    for (const auto& out : outputs) sum += out.value_sat;
    return sum;
}

namespace {

Transaction parse_tx(const nlohmann::json& j, const std::string& path, std::size_t line_no) {
    auto fail = [&](const std::string& what) -> void {
        throw SchemaError(path, line_no, what);
    };
    if (!j.is_object()) fail("transaction must be a JSON object");
    if (!j.contains("tx_id") || !j["tx_id"].is_string()) fail("missing string \"tx_id\"");
    if (!j.contains("timestamp") || !j["timestamp"].is_string()) fail("missing string \"timestamp\"");

    Transaction tx;
    tx.tx_id = j["tx_id"].get<std::string>();
    std::int64_t ts;
    if (!util::try_parse_datetime(j["timestamp"].get<std::string>(), ts)) {
        fail("bad timestamp: " + j["timestamp"].get<std::string>());
    }
    tx.timestamp = ts;

    if (j.contains("inputs")) {
        if (!j["inputs"].is_array()) fail("\"inputs\" must be an array");
        for (const auto& ji : j["inputs"]) {
            TxInput in;
            if (!ji.contains("address") || !ji["address"].is_string()) fail("input needs \"address\"");
            if (!ji.contains("value_sat") || !ji["value_sat"].is_number_integer()) {
                fail("input needs integer \"value_sat\"");
            }
            if (!ji.contains("spends") || !ji["spends"].is_object()) fail("input needs \"spends\"");
            in.address = ji["address"].get<std::string>();
            in.value_sat = ji["value_sat"].get<std::int64_t>();
            if (in.value_sat < 0) fail("negative input value");
            const auto& js = ji["spends"];
            if (!js.contains("tx_id") || !js["tx_id"].is_string() || !js.contains("index") ||
                !js["index"].is_number_integer()) {
                fail("\"spends\" needs tx_id and index");
            }
            in.spends.tx_id = js["tx_id"].get<std::string>();
            in.spends.index = js["index"].get<std::uint32_t>();
            tx.inputs.push_back(std::move(in));
        }
    }

    if (!j.contains("outputs") || !j["outputs"].is_array()) fail("missing \"outputs\" array");
    for (const auto& jo : j["outputs"]) {
        TxOutput out;
        if (!jo.contains("index") || !jo["index"].is_number_integer()) fail("output needs \"index\"");
        if (!jo.contains("address") || !jo["address"].is_string()) fail("output needs \"address\"");
        if (!jo.contains("value_sat") || !jo["value_sat"].is_number_integer()) {
            fail("output needs integer \"value_sat\"");
        }
        out.index = jo["index"].get<std::uint32_t>();
        out.address = jo["address"].get<std::string>();
        out.value_sat = jo["value_sat"].get<std::int64_t>();
        if (out.value_sat < 0) fail("negative output value");
        tx.outputs.push_back(std::move(out));
    }
    for (std::size_t k = 0; k < tx.outputs.size(); ++k) {
        if (tx.outputs[k].index != k) fail("output indices must be contiguous from 0");
    }
    return tx;
}

}  // namespace

ChainStore ChainStore::ingest_file(const std::string& path, const IngestOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open ledger: " + path);

    std::vector<Transaction> txs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(path, line_no, std::string("bad JSON: ") + e.what());
        }
        Transaction tx = parse_tx(j, path, line_no);
        if (opts.cutoff_timestamp && tx.timestamp > *opts.cutoff_timestamp) continue;
        txs.push_back(std::move(tx));
    }
    ChainStore store;
    store.txs_ = std::move(txs);
    store.build_indexes(path, opts.check_fees);
    return store;
}

ChainStore ChainStore::ingest(std::vector<Transaction> txs, const IngestOptions& opts,
                              const std::string& source_name) {
    ChainStore store;
    if (opts.cutoff_timestamp) {
        for (auto& tx : txs) {
            if (tx.timestamp <= *opts.cutoff_timestamp) store.txs_.push_back(std::move(tx));
        }
    } else {
        store.txs_ = std::move(txs);
    }
    store.build_indexes(source_name, opts.check_fees);
    return store;
}

void ChainStore::build_indexes(const std::string& source_name, bool check_fees) {
    for (std::size_t pos = 0; pos < txs_.size(); ++pos) {
        const Transaction& tx = txs_[pos];
        if (!by_id_.emplace(tx.tx_id, pos).second) {
            throw SchemaError(source_name, pos + 1, "duplicate tx_id: " + tx.tx_id);
        }
        if (check_fees && !tx.is_coinbase() && tx.total_in() < tx.total_out()) {
            throw DataError("tx " + tx.tx_id + ": outputs exceed inputs");
        }
        for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
            const TxInput& in = tx.inputs[i];
            auto [it, inserted] = spenders_.emplace(in.spends, SpendRef{pos, i});
            if (!inserted) {
                throw DoubleSpendError("output " + in.spends.tx_id + ":" +
                                       std::to_string(in.spends.index) + " spent twice (by " +
                                       txs_[it->second.tx_pos].tx_id + " and " + tx.tx_id + ")");
            }
            auto& list = outgoing_[in.address];
            if (list.empty() || list.back() != pos) list.push_back(pos);
        }
        for (const TxOutput& out : tx.outputs) {
            auto& list = incoming_[out.address];
            if (list.empty() || list.back() != pos) list.push_back(pos);
        }
    }

    // spend references must resolve against the ledger and agree on value
    for (const auto& [ref, spend] : spenders_) {
        const TxOutput* out = resolve(ref);
        if (!out) {
            throw DataError("tx " + txs_[spend.tx_pos].tx_id + " spends unknown output " +
                            ref.tx_id + ":" + std::to_string(ref.index));
        }
        const TxInput& in = txs_[spend.tx_pos].inputs[spend.input_pos];
        if (out->value_sat != in.value_sat || out->address != in.address) {
            throw DataError("tx " + txs_[spend.tx_pos].tx_id + " input disagrees with output " +
                            ref.tx_id + ":" + std::to_string(ref.index));
        }
    }
}

const Transaction* ChainStore::find_tx(const std::string& tx_id) const {
    auto it = by_id_.find(tx_id);
    return it == by_id_.end() ? nullptr : &txs_[it->second];
}

const std::vector<std::size_t>& ChainStore::incoming(const std::string& address) const {
    static const std::vector<std::size_t> empty;
    auto it = incoming_.find(address);
    return it == incoming_.end() ? empty : it->second;
}

const std::vector<std::size_t>& ChainStore::outgoing(const std::string& address) const {
    static const std::vector<std::size_t> empty;
    auto it = outgoing_.find(address);
    return it == outgoing_.end() ? empty : it->second;
}

std::optional<SpendRef> ChainStore::spender_of(const OutputRef& ref) const {
    auto it = spenders_.find(ref);
    if (it == spenders_.end()) return std::nullopt;
    return it->second;
}

const TxOutput* ChainStore::resolve(const OutputRef& ref) const {
    const Transaction* tx = find_tx(ref.tx_id);
    if (!tx || ref.index >= tx->outputs.size()) return nullptr;
    return &tx->outputs[ref.index];
}

void ChainStore::export_jsonl(std::ostream& out) const {
    for (const Transaction& tx : txs_) {
        nlohmann::json j;
        j["tx_id"] = tx.tx_id;
        j["timestamp"] = util::format_datetime(tx.timestamp);
        j["inputs"] = nlohmann::json::array();
        for (const TxInput& in : tx.inputs) {
            j["inputs"].push_back({{"address", in.address},
                                   {"value_sat", in.value_sat},
                                   {"spends", {{"tx_id", in.spends.tx_id}, {"index", in.spends.index}}}});
        }
        j["outputs"] = nlohmann::json::array();
        for (const TxOutput& o : tx.outputs) {
            j["outputs"].push_back(
                {{"index", o.index}, {"address", o.address}, {"value_sat", o.value_sat}});
        }
        out << j.dump() << '\n';
    }
}

PriceSeries PriceSeries::load_csv(const std::string& path) {
    PriceSeries series;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() != 2) throw SchemaError(path, line_no, "expected date,usd_per_btc");
        series.add(util::parse_date(f[0]), util::parse_scaled_decimal(f[1], 4));
    });
    return series;
}

void PriceSeries::add(std::int64_t day, util::PriceE4 usd_per_btc) {
    if (usd_per_btc <= 0) throw DataError("price must be strictly positive");
    if (!prices_.emplace(day, usd_per_btc).second) {
        throw DataError("duplicate price for day " + util::format_date(day * util::seconds_per_day));
    }
}

std::optional<util::PriceE4> PriceSeries::price_at_day(std::int64_t day) const {
    auto it = prices_.find(day);
    if (it == prices_.end()) return std::nullopt;
    return it->second;
}

util::Cents PriceSeries::value_usd(util::Satoshi sat, std::int64_t at_epoch_seconds) const {
    const std::int64_t day = util::epoch_day(at_epoch_seconds);
    const auto price = price_at_day(day);
    if (!price) {
        throw MissingPriceError("no USD/BTC price for " +
                                util::format_date(at_epoch_seconds));
    }
    return util::sat_to_usd_cents(sat, *price);
}

}  // namespace spamflow::chain
