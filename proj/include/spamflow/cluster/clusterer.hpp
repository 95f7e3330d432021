#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spamflow/chain/chainstore.hpp"
#include "spamflow/util/money.hpp"

namespace spamflow::cluster {

struct CoinJoinParams {
    // clause (a): the most frequent output value must occur at least this often
    int min_equal_outputs = 2;
};

// Equal-output-value CoinJoin shape: the most frequent output value v occurs
// k >= min_equal_outputs times, there are at least k distinct input
// addresses, at least 2k-1 outputs, and v is not the largest output value.
// Ties on the count pick the smallest value.
bool detect_coinjoin(const chain::Transaction& tx, const CoinJoinParams& params = {});

// Externally supplied attribution tags: address -> (tag, source).
class TagMap {
public:
    static TagMap load_csv(const std::string& path);  // address,tag,source

    void add(const std::string& address, const std::string& tag, const std::string& source);
    std::optional<std::string> tag_of(const std::string& address) const;
    bool empty() const { return tags_.empty(); }

private:
    std::unordered_map<std::string, std::string> tags_;
};

struct AddressCluster {
    int id = 0;
    std::vector<std::string> addresses;       // sorted
    std::vector<std::string> seed_addresses;  // sorted subset, filled by annotate()
    std::int64_t first_tx = 0;
    util::Cents received_usd = 0;
    util::Satoshi received_sat = 0;
    std::optional<std::string> tag;
};

// Partition of every address that ever appears as a transaction input.
// Cluster ids are assigned by sorting clusters on their smallest member
// address, so the partition is independent of ledger order.
struct Clustering {
    std::vector<AddressCluster> clusters;
    std::unordered_map<std::string, int> by_address;

    const AddressCluster* cluster_of(const std::string& address) const;
};

// Multiple-input heuristic: all input addresses of one transaction are
// unioned; closed transitively across transactions. CoinJoin-shaped
// transactions contribute no unions when exclusion is on (their input
// addresses stay in the universe as singletons unless joined elsewhere).
Clustering multi_input_cluster(const chain::ChainStore& store, bool exclude_coinjoin = true,
                               const CoinJoinParams& params = {});

// Fills per-cluster statistics (first activity, received totals, tag, seeds).
void annotate_clusters(Clustering& clustering, const chain::ChainStore& store,
                       const chain::PriceSeries* prices, const TagMap* tags,
                       const std::vector<std::string>* seed_addresses);

struct SeedSet {
    std::vector<std::string> all;     // sorted unique
    std::vector<std::string> funded;  // subset with at least one incoming output

    static SeedSet from_addresses(std::vector<std::string> addresses,
                                  const chain::ChainStore& store);
};

struct ExpansionResult {
    std::vector<std::string> addresses;  // sorted unique expanded set
    std::size_t seeds_unclustered = 0;   // funded seeds with no cluster
    std::size_t clusters_touched = 0;    // distinct clusters containing funded seeds
    std::size_t clusters_excluded = 0;   // superclusters / tagged clusters kept seed-only
};

// Expands funded seeds to their full clusters. A cluster larger than
// supercluster_limit addresses, or carrying an attribution tag, contributes
// only its seed addresses. Unclustered funded seeds are kept as-is.
ExpansionResult expand_seeds(const SeedSet& seeds, const Clustering& clustering,
                             std::int64_t supercluster_limit = 10000);

}  // namespace spamflow::cluster
