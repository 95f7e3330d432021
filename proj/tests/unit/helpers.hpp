#pragma once

// Small builders shared by the chain-facing tests.

#include <string>
#include <vector>

#include "spamflow/chain/chainstore.hpp"
#include "spamflow/util/rng.hpp"
#include "spamflow/util/time.hpp"

namespace helpers {

using spamflow::chain::OutputRef;
using spamflow::chain::Transaction;
using spamflow::chain::TxInput;
using spamflow::chain::TxOutput;

inline Transaction coinbase(std::string id, std::int64_t ts,
                            std::vector<std::pair<std::string, std::int64_t>> outs) {
    Transaction tx;
    tx.tx_id = std::move(id);
    tx.timestamp = ts;
    for (std::size_t i = 0; i < outs.size(); ++i) {
        tx.outputs.push_back({static_cast<std::uint32_t>(i), outs[i].first, outs[i].second});
    }
    return tx;
}

inline TxInput input(std::string addr, std::int64_t value, std::string spends_tx,
                     std::uint32_t index) {
    return {std::move(addr), value, {std::move(spends_tx), index}};
}

inline Transaction tx(std::string id, std::int64_t ts, std::vector<TxInput> ins,
                      std::vector<std::pair<std::string, std::int64_t>> outs) {
    Transaction t;
    t.tx_id = std::move(id);
    t.timestamp = ts;
    t.inputs = std::move(ins);
    for (std::size_t i = 0; i < outs.size(); ++i) {
        t.outputs.push_back({static_cast<std::uint32_t>(i), outs[i].first, outs[i].second});
    }
    return t;
}

// Random well-formed ledger: one funding coinbase, then spends with random
// input-address groupings. Suitable for clustering and filter property tests.
inline std::vector<Transaction> random_ledger(spamflow::util::Rng& rng, std::size_t max_txs,
                                              std::size_t max_addresses) {
    const std::size_t n_addr = 2 + rng.below(max_addresses - 1);
    auto addr = [&](std::uint64_t i) { return "addr" + std::to_string(i); };

    std::vector<Transaction> txs;
    const std::int64_t t0 = spamflow::util::parse_datetime("2018-07-01T00:00:00Z");

    // every address gets several spendable outputs
    std::vector<std::pair<std::string, std::int64_t>> funding;
    std::vector<std::pair<OutputRef, std::pair<std::string, std::int64_t>>> utxos;
    for (std::size_t i = 0; i < n_addr; ++i) {
        for (int k = 0; k < 3; ++k) {
            funding.emplace_back(addr(i), 50'000'000 + static_cast<std::int64_t>(rng.below(1000)) * 1000);
        }
    }
    txs.push_back(coinbase("fund", t0, funding));
    for (std::size_t i = 0; i < funding.size(); ++i) {
        utxos.push_back({{"fund", static_cast<std::uint32_t>(i)},
                         {funding[i].first, funding[i].second}});
    }

    const std::size_t n_txs = 1 + rng.below(max_txs);
    for (std::size_t t = 0; t < n_txs && !utxos.empty(); ++t) {
        const std::size_t n_in = 1 + rng.below(std::min<std::size_t>(4, utxos.size()));
        std::vector<TxInput> ins;
        std::int64_t total = 0;
        for (std::size_t k = 0; k < n_in && !utxos.empty(); ++k) {
            const std::size_t pick = rng.below(utxos.size());
            const auto [ref, av] = utxos[pick];
            utxos.erase(utxos.begin() + static_cast<std::ptrdiff_t>(pick));
            ins.push_back(input(av.first, av.second, ref.tx_id, ref.index));
            total += av.second;
        }
        const std::size_t n_out = 1 + rng.below(3);
        std::vector<std::pair<std::string, std::int64_t>> outs;
        std::int64_t rest = total - 1000;
        for (std::size_t k = 0; k + 1 < n_out; ++k) {
            const std::int64_t v = rest / 2;
            outs.emplace_back(addr(rng.below(n_addr)), v);
            rest -= v;
        }
        outs.emplace_back(addr(rng.below(n_addr)), rest);
        const std::string id = "t" + std::to_string(t);
        txs.push_back(tx(id, t0 + static_cast<std::int64_t>(t + 1) * 3600, ins, outs));
        for (std::size_t i = 0; i < outs.size(); ++i) {
            if (rng.below(3) != 0) {  // leave some outputs unspent
                utxos.push_back({{id, static_cast<std::uint32_t>(i)},
                                 {outs[i].first, outs[i].second}});
            }
        }
    }
    return txs;
}

}  // namespace helpers
