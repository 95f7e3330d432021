#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spamflow/chain/chainstore.hpp"
#include "spamflow/cluster/clusterer.hpp"
#include "spamflow/filters/filters.hpp"

namespace spamflow::flows {

// UTXO-level delay between receiving a victim payment and spending it.
struct HoldingPeriod {
    chain::OutputRef payment;
    std::int64_t received_at = 0;
    std::int64_t spent_at = 0;
    double hours = 0.0;
    util::Satoshi amount_sat = 0;
};

struct HistogramBin {
    std::int64_t start_hours = 0;
    double btc = 0.0;
};

struct HoldingSummary {
    std::vector<HoldingPeriod> periods;  // spent outputs only
    std::size_t unspent_count = 0;
    util::Satoshi unspent_sat = 0;
    util::Satoshi total_spent_sat = 0;
    double mean_days = 0.0;
    double median_days = 0.0;
    std::vector<HistogramBin> histogram;  // amount-weighted, ascending bin start
};

// Spend delay per payment output. Unspent outputs are excluded from the
// mean/median and counted separately. Histogram bins are `bin_hours` wide
// and weighted by the BTC amount held.
HoldingSummary holding_periods(const std::vector<filters::PaymentRecord>& payments,
                               const chain::ChainStore& store, int bin_hours = 10);

enum class StopReason { none, tagged_entity, width_limit, depth_limit, unspent };

const char* stop_reason_name(StopReason reason);

struct FlowNode {
    std::string address;
    int cluster_id = -1;  // -1 when the address never spends (unclustered)
    std::optional<std::string> tag;
    double traced_btc = 0.0;
    StopReason stop = StopReason::none;
};

struct FlowLevel {
    int depth = 0;
    std::vector<FlowNode> nodes;  // sorted by address
};

struct TraceParams {
    int max_depth = 2;
    std::size_t width_limit = 100;  // per depth level
};

struct FlowTraversal {
    std::size_t root_payment_count = 0;
    double root_btc = 0.0;
    std::vector<FlowLevel> levels;  // levels[d] is depth d

    // Traced BTC crossing a cluster boundary into each entity (depth >= 1).
    std::map<int, double> cluster_entering_btc;                  // clustered targets
    std::map<std::string, double> unclustered_entering_btc;      // never-spending targets
    double tagged_entity_btc = 0.0;  // subset of the above that reached tagged entities

    bool width_limit_hit = false;
    int width_limit_depth = -1;
};

// Breadth-first walk of the spend graph starting from the kept victim
// payments (depth 0). Traced value moves through a spending transaction
// proportionally to output values, with the fee share attributed to no
// successor. Branch expansion halts at tagged entities; the traversal halts
// entirely when a depth level holds more than width_limit nodes.
FlowTraversal trace_flows(const std::vector<filters::PaymentRecord>& payments,
                          const chain::ChainStore& store, const cluster::Clustering& clustering,
                          const cluster::TagMap& tags, const TraceParams& params = {});

struct DepthTableRow {
    int cluster_id = 0;
    util::Cents total_spent_usd = 0;
    std::int64_t first_tx = 0;
    std::size_t txs_out = 0;
    double btc_received = 0.0;
};

// Untagged entities at one depth, sorted by traced BTC received descending.
// Unclustered addresses appear as single-address rows with synthetic ids
// following the real ones. Lifetime statistics come from the whole ledger.
std::vector<DepthTableRow> depth_table(const FlowTraversal& traversal, int depth,
                                       const chain::ChainStore& store,
                                       const cluster::Clustering& clustering,
                                       const chain::PriceSeries& prices);

struct CashoutResult {
    double btc = 0.0;
    double fraction_of_revenue = 0.0;
};

// Traced BTC entering untagged entities whose first ledger activity predates
// `cutoff_epoch`, as a fraction of the filtered revenue (denominator in
// satoshis). Clustering must be annotated so first_tx and tags are present.
CashoutResult cashout_candidates(const FlowTraversal& traversal,
                                 const cluster::Clustering& clustering,
                                 const chain::ChainStore& store, std::int64_t cutoff_epoch,
                                 util::Satoshi revenue_sat);

}  // namespace spamflow::flows
