#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "spamflow/cluster/clusterer.hpp"
#include "spamflow/util/time.hpp"

using namespace spamflow;
using helpers::coinbase;
using helpers::input;
using helpers::tx;

namespace {

const std::int64_t t0 = util::parse_datetime("2018-09-01T00:00:00Z");

}  // namespace

TEST_CASE("coinjoin heuristic clauses") {
    // 2-in/2-out with distinct values: no
    auto plain = tx("a", t0, {input("A", 10, "f", 0), input("B", 20, "f", 1)},
                    {{"X", 15}, {"Y", 14}});
    CHECK_FALSE(cluster::detect_coinjoin(plain));

    // single input fails clause (b)
    auto single = tx("b", t0, {input("A", 100, "f", 0)}, {{"X", 40}, {"Y", 40}});
    CHECK_FALSE(cluster::detect_coinjoin(single));

    // 5 distinct inputs, five 0.1 outputs and larger change: yes
    std::vector<chain::TxInput> ins;
    for (int i = 0; i < 5; ++i) {
        ins.push_back(input("in" + std::to_string(i), 30'000'000, "f", static_cast<std::uint32_t>(i)));
    }
    auto cj = tx("c", t0, ins,
                 {{"o1", 10'000'000},
                  {"o2", 10'000'000},
                  {"o3", 10'000'000},
                  {"o4", 10'000'000},
                  {"o5", 10'000'000},
                  {"c1", 40'000'000},
                  {"c2", 30'000'000},
                  {"c3", 20'000'000},
                  {"c4", 9'000'000}});
    CHECK(cluster::detect_coinjoin(cj));  // k=5, inputs 5, outputs 9 >= 2k-1, v below max

    // clause (d): equal values being the largest disqualifies
    auto equal_max = tx("d", t0, {input("A", 50, "f", 0), input("B", 50, "f", 1)},
                        {{"X", 40}, {"Y", 40}, {"Z", 10}});
    CHECK_FALSE(cluster::detect_coinjoin(equal_max));

    // clause (c): not enough outputs for k=2
    auto few_outs = tx("e", t0, {input("A", 50, "f", 0), input("B", 50, "f", 1)},
                       {{"X", 10}, {"Y", 10}});
    CHECK_FALSE(cluster::detect_coinjoin(few_outs));
}

TEST_CASE("the quoted A-B, B-C construction yields one cluster") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("f", t0, {{"A", 100}, {"B", 100}, {"B", 100}, {"C", 100}}));
    txs.push_back(tx("t1", t0 + 1, {input("A", 100, "f", 0), input("B", 100, "f", 1)},
                     {{"X", 199}}));
    txs.push_back(tx("t2", t0 + 2, {input("B", 100, "f", 2), input("C", 100, "f", 3)},
                     {{"Y", 199}}));
    const auto store = chain::ChainStore::ingest(std::move(txs));
    const auto clustering = cluster::multi_input_cluster(store);
    REQUIRE(clustering.clusters.size() == 1);
    CHECK(clustering.clusters[0].addresses == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("no shared inputs means singleton clusters") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("f", t0, {{"A", 100}, {"B", 100}}));
    txs.push_back(tx("t1", t0 + 1, {input("A", 100, "f", 0)}, {{"X", 99}}));
    txs.push_back(tx("t2", t0 + 2, {input("B", 100, "f", 1)}, {{"Y", 99}}));
    const auto store = chain::ChainStore::ingest(std::move(txs));
    const auto clustering = cluster::multi_input_cluster(store);
    CHECK(clustering.clusters.size() == 2);
    for (const auto& c : clustering.clusters) CHECK(c.addresses.size() == 1);
}

TEST_CASE("partition equals the fixpoint oracle on random ledgers") {
    util::Rng rng(37);
    for (int round = 0; round < 40; ++round) {
        const auto txs = helpers::random_ledger(rng, 50, 25);
        const auto store = chain::ChainStore::ingest(txs);
        for (bool exclude : {true, false}) {
            const auto clustering = cluster::multi_input_cluster(store, exclude);
            CHECK(oracles::clustering_as_partition(clustering) ==
                  oracles::cluster_fixpoint(txs, exclude));
        }
    }
}

TEST_CASE("ledger order does not change the partition") {
    util::Rng rng(41);
    auto txs = helpers::random_ledger(rng, 40, 15);
    const auto base = oracles::clustering_as_partition(
        cluster::multi_input_cluster(chain::ChainStore::ingest(txs)));
    for (int round = 0; round < 5; ++round) {
        rng.shuffle(txs);
        const auto shuffled = oracles::clustering_as_partition(
            cluster::multi_input_cluster(chain::ChainStore::ingest(txs)));
        CHECK(shuffled == base);
    }
}

TEST_CASE("coinjoin exclusion refines the unexcluded partition") {
    util::Rng rng(43);
    for (int round = 0; round < 20; ++round) {
        auto txs = helpers::random_ledger(rng, 40, 15);
        // plant a coinjoin-shaped tx over fresh funding
        txs.push_back(coinbase("cjf", t0 - 100,
                               {{"j1", 30'000'000}, {"j2", 30'000'000}, {"j3", 30'000'000}}));
        txs.push_back(tx("cj", t0 - 50,
                         {input("j1", 30'000'000, "cjf", 0), input("j2", 30'000'000, "cjf", 1),
                          input("j3", 30'000'000, "cjf", 2)},
                         {{"e1", 10'000'000},
                          {"e2", 10'000'000},
                          {"e3", 10'000'000},
                          {"ch1", 30'000'000},
                          {"ch2", 29'999'000}}));
        const auto store = chain::ChainStore::ingest(txs);
        const auto with = cluster::multi_input_cluster(store, true);
        const auto without = cluster::multi_input_cluster(store, false);

        // refinement: every with-exclusion cluster sits inside one
        // without-exclusion cluster
        for (const auto& c : with.clusters) {
            const auto* coarse = without.cluster_of(c.addresses.front());
            REQUIRE(coarse != nullptr);
            for (const auto& a : c.addresses) {
                CHECK(without.cluster_of(a)->id == coarse->id);
            }
        }
        CHECK(with.clusters.size() >= without.clusters.size());
    }
}

TEST_CASE("cluster statistics and seed expansion") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("f", t0, {{"S1", 100}, {"S2", 100}, {"L0", 100}}));
    // victim pays the seeds
    txs.push_back(coinbase("v", t0 + 3600, {{"S1", 50'000'000}, {"S2", 25'000'000}}));
    // seeds co-spend: cluster {S1, S2}
    txs.push_back(tx("sweep", t0 + 7200,
                     {input("S1", 50'000'000, "v", 0), input("S2", 25'000'000, "v", 1)},
                     {{"COL", 74'999'000}}));
    auto store = chain::ChainStore::ingest(std::move(txs));

    auto clustering = cluster::multi_input_cluster(store);
    chain::PriceSeries prices;
    prices.add(util::epoch_day(t0), 4000'0000);
    cluster::TagMap tags;
    std::vector<std::string> seeds = {"S1", "S2", "UNFUNDED"};
    cluster::annotate_clusters(clustering, store, &prices, &tags, &seeds);

    REQUIRE(clustering.clusters.size() == 1);
    const auto& c = clustering.clusters[0];
    CHECK(c.addresses == std::vector<std::string>{"S1", "S2"});
    CHECK(c.seed_addresses == std::vector<std::string>{"S1", "S2"});
    CHECK(c.first_tx == t0);
    CHECK(c.received_sat == 75'000'200);
    CHECK(c.received_usd == 300000);  // $2,000 + $1,000, dust rounds to zero

    const auto seedset = cluster::SeedSet::from_addresses(seeds, store);
    CHECK(seedset.all.size() == 3);
    CHECK(seedset.funded == std::vector<std::string>{"S1", "S2"});

    auto expansion = cluster::expand_seeds(seedset, clustering, 10);
    CHECK(expansion.addresses == std::vector<std::string>{"S1", "S2"});
    CHECK(expansion.clusters_touched == 1);
    CHECK(expansion.clusters_excluded == 0);
    CHECK(expansion.seeds_unclustered == 0);
}

TEST_CASE("superclusters and tagged clusters expand to seeds only") {
    std::vector<chain::Transaction> txs;
    std::vector<std::pair<std::string, std::int64_t>> funding = {{"SEED", 1000}};
    for (int i = 0; i < 30; ++i) funding.emplace_back("m" + std::to_string(i), 1000);
    txs.push_back(coinbase("f", t0, funding));
    std::vector<chain::TxInput> ins = {input("SEED", 1000, "f", 0)};
    for (int i = 0; i < 30; ++i) {
        ins.push_back(input("m" + std::to_string(i), 1000, "f", static_cast<std::uint32_t>(i + 1)));
    }
    txs.push_back(tx("wide", t0 + 1, ins, {{"sink", 29'000}}));
    const auto store = chain::ChainStore::ingest(std::move(txs));

    auto clustering = cluster::multi_input_cluster(store);
    const auto seedset = cluster::SeedSet::from_addresses({"SEED"}, store);

    auto expansion = cluster::expand_seeds(seedset, clustering, 10);  // 31 > 10
    CHECK(expansion.addresses == std::vector<std::string>{"SEED"});
    CHECK(expansion.clusters_excluded == 1);

    // with a generous limit the whole cluster is taken
    expansion = cluster::expand_seeds(seedset, clustering, 10'000);
    CHECK(expansion.addresses.size() == 31);

    // a tag on any member keeps expansion at the seed
    cluster::TagMap tags;
    tags.add("m7", "exchange-x", "test");
    cluster::annotate_clusters(clustering, store, nullptr, &tags, nullptr);
    expansion = cluster::expand_seeds(seedset, clustering, 10'000);
    CHECK(expansion.addresses == std::vector<std::string>{"SEED"});
    CHECK(expansion.clusters_excluded == 1);
}

TEST_CASE("unclustered funded seeds are kept as-is") {
    std::vector<chain::Transaction> txs;
    txs.push_back(coinbase("v", t0, {{"LONER", 1'000'000}}));
    const auto store = chain::ChainStore::ingest(std::move(txs));
    const auto clustering = cluster::multi_input_cluster(store);
    const auto seedset = cluster::SeedSet::from_addresses({"LONER"}, store);
    const auto expansion = cluster::expand_seeds(seedset, clustering, 100);
    CHECK(expansion.addresses == std::vector<std::string>{"LONER"});
    CHECK(expansion.seeds_unclustered == 1);
    CHECK(expansion.clusters_touched == 0);
}
