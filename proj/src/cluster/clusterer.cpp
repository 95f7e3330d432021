#include "spamflow/cluster/clusterer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/union_find.hpp"

namespace spamflow::cluster {

bool detect_coinjoin(const chain::Transaction& tx, const CoinJoinParams& params) {
    if (tx.outputs.size() < 2 || tx.inputs.empty()) return false;

    std::map<util::Satoshi, int> counts;
    util::Satoshi max_value = 0;
    for (const auto& out : tx.outputs) {
        ++counts[out.value_sat];
        max_value = std::max(max_value, out.value_sat);
    }
    util::Satoshi v = 0;
    int k = 0;
    for (const auto& [value, count] : counts) {  // ascending value: ties keep the smallest
        if (count > k) {
            k = count;
            v = value;
        }
    }
    if (k < params.min_equal_outputs) return false;  // (a)

    std::set<std::string> input_addrs;
    for (const auto& in : tx.inputs) input_addrs.insert(in.address);
    if (static_cast<int>(input_addrs.size()) < k) return false;            // (b)
    if (tx.outputs.size() < static_cast<std::size_t>(2 * k - 1)) return false;  // (c)
    return v != max_value;                                                 // (d)
}

TagMap TagMap::load_csv(const std::string& path) {
    TagMap tags;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() < 2) throw SchemaError(path, line_no, "expected address,tag[,source]");
        tags.add(f[0], f[1], f.size() > 2 ? f[2] : "");
    });
    return tags;
}

void TagMap::add(const std::string& address, const std::string& tag, const std::string&) {
    auto [it, inserted] = tags_.emplace(address, tag);
    if (!inserted && it->second > tag) it->second = tag;  // deterministic on duplicates
}

std::optional<std::string> TagMap::tag_of(const std::string& address) const {
    auto it = tags_.find(address);
    if (it == tags_.end()) return std::nullopt;
    return it->second;
}

const AddressCluster* Clustering::cluster_of(const std::string& address) const {
    auto it = by_address.find(address);
    if (it == by_address.end()) return nullptr;
    return &clusters[static_cast<std::size_t>(it->second)];
}

Clustering multi_input_cluster(const chain::ChainStore& store, bool exclude_coinjoin,
                               const CoinJoinParams& params) {
    // universe: every address that appears as an input anywhere
    std::vector<std::string> universe;
    for (const auto& tx : store.transactions()) {
        for (const auto& in : tx.inputs) universe.push_back(in.address);
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    std::unordered_map<std::string, std::size_t> index;
    index.reserve(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], i);

    util::UnionFind uf(universe.size());
    for (const auto& tx : store.transactions()) {
        if (tx.inputs.size() < 2) continue;
        if (exclude_coinjoin && detect_coinjoin(tx, params)) continue;
        const std::size_t first = index.at(tx.inputs.front().address);
        for (std::size_t i = 1; i < tx.inputs.size(); ++i) {
            uf.unite(first, index.at(tx.inputs[i].address));
        }
    }

    std::unordered_map<std::size_t, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        groups[uf.find(i)].push_back(universe[i]);  // members arrive sorted
    }

    Clustering result;
    result.clusters.reserve(groups.size());
    for (auto& [root, members] : groups) {
        AddressCluster c;
        c.addresses = std::move(members);
        result.clusters.push_back(std::move(c));
    }
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const AddressCluster& a, const AddressCluster& b) {
                  return a.addresses.front() < b.addresses.front();
              });
    for (std::size_t i = 0; i < result.clusters.size(); ++i) {
        result.clusters[i].id = static_cast<int>(i);
        for (const auto& addr : result.clusters[i].addresses) {
            result.by_address.emplace(addr, static_cast<int>(i));
        }
    }
    return result;
}

void annotate_clusters(Clustering& clustering, const chain::ChainStore& store,
                       const chain::PriceSeries* prices, const TagMap* tags,
                       const std::vector<std::string>* seed_addresses) {
    for (auto& c : clustering.clusters) {
        c.first_tx = 0;
        c.received_sat = 0;
        c.received_usd = 0;
        c.tag.reset();
        c.seed_addresses.clear();

        bool first_set = false;
        for (const auto& addr : c.addresses) {
            for (std::size_t pos : store.incoming(addr)) {
                const auto& tx = store.transactions()[pos];
                if (!first_set || tx.timestamp < c.first_tx) {
                    c.first_tx = tx.timestamp;
                    first_set = true;
                }
                for (const auto& out : tx.outputs) {
                    if (out.address != addr) continue;
                    c.received_sat += out.value_sat;
                    if (prices) c.received_usd += prices->value_usd(out.value_sat, tx.timestamp);
                }
            }
            for (std::size_t pos : store.outgoing(addr)) {
                const auto& tx = store.transactions()[pos];
                if (!first_set || tx.timestamp < c.first_tx) {
                    c.first_tx = tx.timestamp;
                    first_set = true;
                }
            }
            if (tags) {
                if (auto tag = tags->tag_of(addr); tag && (!c.tag || *tag < *c.tag)) {
                    c.tag = tag;
                }
            }
        }
        if (seed_addresses) {
            for (const auto& seed : *seed_addresses) {
                if (std::binary_search(c.addresses.begin(), c.addresses.end(), seed)) {
                    c.seed_addresses.push_back(seed);
                }
            }
            std::sort(c.seed_addresses.begin(), c.seed_addresses.end());
        }
    }
}

SeedSet SeedSet::from_addresses(std::vector<std::string> addresses,
                                const chain::ChainStore& store) {
    SeedSet set;
    std::sort(addresses.begin(), addresses.end());
    addresses.erase(std::unique(addresses.begin(), addresses.end()), addresses.end());
    set.all = std::move(addresses);
    for (const auto& addr : set.all) {
        if (!store.incoming(addr).empty()) set.funded.push_back(addr);
    }
    return set;
}

ExpansionResult expand_seeds(const SeedSet& seeds, const Clustering& clustering,
                             std::int64_t supercluster_limit) {
    ExpansionResult result;
    std::set<std::string> expanded;
    std::set<int> clusters_seen;
    std::set<int> clusters_excluded;

    for (const auto& seed : seeds.funded) {
        const AddressCluster* cluster = clustering.cluster_of(seed);
        if (!cluster) {
            ++result.seeds_unclustered;
            expanded.insert(seed);
            continue;
        }
        clusters_seen.insert(cluster->id);
        const bool too_big =
            static_cast<std::int64_t>(cluster->addresses.size()) > supercluster_limit;
        if (too_big || cluster->tag) {
            clusters_excluded.insert(cluster->id);
            expanded.insert(seed);  // keep only the seed itself
        } else {
            expanded.insert(cluster->addresses.begin(), cluster->addresses.end());
        }
    }
    result.clusters_touched = clusters_seen.size();
    result.clusters_excluded = clusters_excluded.size();
    result.addresses.assign(expanded.begin(), expanded.end());
    return result;
}

}  // namespace spamflow::cluster
