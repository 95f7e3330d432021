#include "spamflow/flows/flows.hpp"

#include <algorithm>

#include "spamflow/util/errors.hpp"

namespace spamflow::flows {

namespace {

constexpr double sat_per_btc = 100'000'000.0;

}  // namespace

HoldingSummary holding_periods(const std::vector<filters::PaymentRecord>& payments,
                               const chain::ChainStore& store, int bin_hours) {
    if (bin_hours <= 0) throw ConfigError("histogram bin width must be positive");

    HoldingSummary summary;
    std::map<std::int64_t, double> bins;
    for (const auto& rec : payments) {
        const auto spend = store.spender_of(rec.ref);
        if (!spend) {
            ++summary.unspent_count;
            summary.unspent_sat += rec.value_sat;
            continue;
        }
        HoldingPeriod hp;
        hp.payment = rec.ref;
        hp.received_at = rec.timestamp;
        hp.spent_at = store.transactions()[spend->tx_pos].timestamp;
        if (hp.spent_at < hp.received_at) {
            throw DataError("output " + rec.ref.tx_id + ":" + std::to_string(rec.ref.index) +
                            " spent before it was received");
        }
        hp.hours = static_cast<double>(hp.spent_at - hp.received_at) / 3600.0;
        hp.amount_sat = rec.value_sat;
        summary.total_spent_sat += rec.value_sat;

        const std::int64_t bin = static_cast<std::int64_t>(hp.hours / bin_hours) * bin_hours;
        bins[bin] += static_cast<double>(rec.value_sat) / sat_per_btc;
        summary.periods.push_back(std::move(hp));
    }

    if (!summary.periods.empty()) {
        std::vector<double> hours;
        hours.reserve(summary.periods.size());
        double sum = 0.0;
        for (const auto& hp : summary.periods) {
            hours.push_back(hp.hours);
            sum += hp.hours;
        }
        std::sort(hours.begin(), hours.end());
        summary.mean_days = sum / static_cast<double>(hours.size()) / 24.0;
        const std::size_t mid = hours.size() / 2;
        const double median_hours =
            hours.size() % 2 ? hours[mid] : (hours[mid - 1] + hours[mid]) / 2.0;
        summary.median_days = median_hours / 24.0;
    }
    for (const auto& [start, btc] : bins) {
        summary.histogram.push_back({start, btc});
    }
    return summary;
}

const char* stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::tagged_entity: return "tagged_entity";
        case StopReason::width_limit: return "width_limit";
        case StopReason::depth_limit: return "depth_limit";
        case StopReason::unspent: return "unspent";
        case StopReason::none: break;
    }
    return "none";
}

namespace {

// A traced UTXO: some share of a victim payment sitting on an output.
struct TracedOutput {
    chain::OutputRef ref;
    std::string owner;
    double btc = 0.0;
};

struct NodeInfo {
    double btc = 0.0;
    bool any_spent = false;
    bool any_unspent = false;
    bool tagged = false;
};

}  // namespace

FlowTraversal trace_flows(const std::vector<filters::PaymentRecord>& payments,
                          const chain::ChainStore& store, const cluster::Clustering& clustering,
                          const cluster::TagMap& tags, const TraceParams& params) {
    FlowTraversal traversal;

    auto cluster_id_of = [&](const std::string& addr) -> int {
        const auto* c = clustering.cluster_of(addr);
        return c ? c->id : -1;
    };
    auto tag_of = [&](const std::string& addr) -> std::optional<std::string> {
        if (auto t = tags.tag_of(addr)) return t;
        const auto* c = clustering.cluster_of(addr);
        if (c && c->tag) return c->tag;
        return std::nullopt;
    };

    // depth 0: the victim payment outputs themselves
    std::map<chain::OutputRef, TracedOutput> frontier;
    std::map<std::string, NodeInfo> level_nodes;
    for (const auto& rec : payments) {
        auto& traced = frontier[rec.ref];
        traced.ref = rec.ref;
        traced.owner = rec.address;
        traced.btc += static_cast<double>(rec.value_sat) / sat_per_btc;
        auto& node = level_nodes[rec.address];
        node.btc += static_cast<double>(rec.value_sat) / sat_per_btc;
        ++traversal.root_payment_count;
        traversal.root_btc += static_cast<double>(rec.value_sat) / sat_per_btc;
    }

    int depth = 0;
    while (true) {
        FlowLevel level;
        level.depth = depth;
        for (auto& [addr, info] : level_nodes) {
            FlowNode node;
            node.address = addr;
            node.cluster_id = cluster_id_of(addr);
            node.tag = tag_of(addr);
            node.traced_btc = info.btc;
            info.tagged = node.tag.has_value();
            node.stop = StopReason::none;
            level.nodes.push_back(std::move(node));
        }

        const bool over_width = level_nodes.size() > params.width_limit && depth > 0;
        if (over_width) {
            traversal.width_limit_hit = true;
            traversal.width_limit_depth = depth;
            for (auto& node : level.nodes) node.stop = StopReason::width_limit;
            traversal.levels.push_back(std::move(level));
            break;
        }
        if (depth == params.max_depth) {
            for (auto& node : level.nodes) {
                node.stop = node.tag ? StopReason::tagged_entity : StopReason::depth_limit;
            }
            traversal.levels.push_back(std::move(level));
            break;
        }

        // expand: spend every traced output whose owner is not tagged
        std::map<chain::OutputRef, TracedOutput> next_frontier;
        std::map<std::string, NodeInfo> next_nodes;
        for (const auto& [ref, traced] : frontier) {
            NodeInfo& owner_info = level_nodes.at(traced.owner);
            if (owner_info.tagged) continue;  // halt the branch at known entities
            const auto spend = store.spender_of(ref);
            if (!spend) {
                owner_info.any_unspent = true;
                continue;
            }
            owner_info.any_spent = true;
            const auto& tx = store.transactions()[spend->tx_pos];
            const double total_in = static_cast<double>(tx.total_in());
            if (total_in <= 0.0) continue;
            const int owner_cluster = cluster_id_of(traced.owner);
            for (const auto& out : tx.outputs) {
                const double share =
                    traced.btc * (static_cast<double>(out.value_sat) / total_in);
                if (share <= 0.0) continue;
                auto& next = next_frontier[{tx.tx_id, out.index}];
                next.ref = {tx.tx_id, out.index};
                next.owner = out.address;
                next.btc += share;
                next_nodes[out.address].btc += share;

                // value crossing a cluster boundary "enters" the target entity
                const int target_cluster = cluster_id_of(out.address);
                const bool crosses = target_cluster == -1 || target_cluster != owner_cluster;
                if (crosses) {
                    if (target_cluster == -1) {
                        traversal.unclustered_entering_btc[out.address] += share;
                    } else {
                        traversal.cluster_entering_btc[target_cluster] += share;
                    }
                    if (tag_of(out.address)) traversal.tagged_entity_btc += share;
                }
            }
        }

        for (auto& node : level.nodes) {
            const NodeInfo& info = level_nodes.at(node.address);
            if (info.tagged) {
                node.stop = StopReason::tagged_entity;
            } else if (!info.any_spent && info.any_unspent) {
                node.stop = StopReason::unspent;
            }
        }
        traversal.levels.push_back(std::move(level));

        if (next_nodes.empty()) break;
        frontier = std::move(next_frontier);
        level_nodes = std::move(next_nodes);
        ++depth;
    }
    return traversal;
}

std::vector<DepthTableRow> depth_table(const FlowTraversal& traversal, int depth,
                                       const chain::ChainStore& store,
                                       const cluster::Clustering& clustering,
                                       const chain::PriceSeries& prices) {
    std::vector<DepthTableRow> rows;
    if (depth < 0 || static_cast<std::size_t>(depth) >= traversal.levels.size()) return rows;

    // group the level's untagged nodes by cluster
    std::map<int, double> by_cluster;
    std::vector<std::pair<std::string, double>> unclustered;
    for (const auto& node : traversal.levels[static_cast<std::size_t>(depth)].nodes) {
        if (node.tag) continue;
        if (node.cluster_id >= 0) {
            by_cluster[node.cluster_id] += node.traced_btc;
        } else {
            unclustered.emplace_back(node.address, node.traced_btc);
        }
    }

    auto lifetime_stats = [&](const std::vector<std::string>& addresses, DepthTableRow& row) {
        std::set<std::size_t> out_txs;
        bool first_set = false;
        for (const auto& addr : addresses) {
            for (std::size_t pos : store.outgoing(addr)) out_txs.insert(pos);
            for (std::size_t pos : store.incoming(addr)) {
                const auto ts = store.transactions()[pos].timestamp;
                if (!first_set || ts < row.first_tx) {
                    row.first_tx = ts;
                    first_set = true;
                }
            }
        }
        row.txs_out = out_txs.size();
        for (std::size_t pos : out_txs) {
            const auto& tx = store.transactions()[pos];
            if (tx.timestamp < row.first_tx || !first_set) {
                row.first_tx = tx.timestamp;
                first_set = true;
            }
            for (const auto& in : tx.inputs) {
                if (std::find(addresses.begin(), addresses.end(), in.address) != addresses.end()) {
                    row.total_spent_usd += prices.value_usd(in.value_sat, tx.timestamp);
                }
            }
        }
    };

    for (const auto& [cluster_id, btc] : by_cluster) {
        DepthTableRow row;
        row.cluster_id = cluster_id;
        row.btc_received = btc;
        lifetime_stats(clustering.clusters[static_cast<std::size_t>(cluster_id)].addresses, row);
        rows.push_back(std::move(row));
    }
    // synthetic ids for never-spending addresses, after the real clusters
    std::sort(unclustered.begin(), unclustered.end());
    int synthetic = static_cast<int>(clustering.clusters.size());
    for (const auto& [addr, btc] : unclustered) {
        DepthTableRow row;
        row.cluster_id = synthetic++;
        row.btc_received = btc;
        lifetime_stats({addr}, row);
        rows.push_back(std::move(row));
    }

    std::sort(rows.begin(), rows.end(), [](const DepthTableRow& a, const DepthTableRow& b) {
        if (a.btc_received != b.btc_received) return a.btc_received > b.btc_received;
        return a.cluster_id < b.cluster_id;
    });
    return rows;
}

CashoutResult cashout_candidates(const FlowTraversal& traversal,
                                 const cluster::Clustering& clustering,
                                 const chain::ChainStore& store, std::int64_t cutoff_epoch,
                                 util::Satoshi revenue_sat) {
    CashoutResult result;
    for (const auto& [cluster_id, btc] : traversal.cluster_entering_btc) {
        const auto& c = clustering.clusters[static_cast<std::size_t>(cluster_id)];
        if (c.tag) continue;
        if (c.first_tx < cutoff_epoch) result.btc += btc;
    }
    for (const auto& [addr, btc] : traversal.unclustered_entering_btc) {
        // first activity of a never-spending address is its first receipt
        const auto& in_txs = store.incoming(addr);
        if (in_txs.empty()) continue;
        std::int64_t first = store.transactions()[in_txs.front()].timestamp;
        for (std::size_t pos : in_txs) {
            first = std::min(first, store.transactions()[pos].timestamp);
        }
        if (first < cutoff_epoch) result.btc += btc;
    }
    if (revenue_sat > 0) {
        result.fraction_of_revenue = result.btc / (static_cast<double>(revenue_sat) / sat_per_btc);
    }
    return result;
}

}  // namespace spamflow::flows
