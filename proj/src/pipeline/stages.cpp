#include "spamflow/pipeline/stages.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "spamflow/chain/chainstore.hpp"
#include "spamflow/cluster/clusterer.hpp"
#include "spamflow/corpus/bucketer.hpp"
#include "spamflow/corpus/email.hpp"
#include "spamflow/corpus/extract.hpp"
#include "spamflow/corpus/tokenize.hpp"
#include "spamflow/filters/filters.hpp"
#include "spamflow/flows/flows.hpp"
#include "spamflow/linkage/linkage.hpp"
#include "spamflow/stats/stats.hpp"
#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/money.hpp"
#include "spamflow/util/svg.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::pipeline {

namespace fs = std::filesystem;

namespace {

std::string path_in(const std::string& out_dir, const char* name) {
    return (fs::path(out_dir) / name).string();
}

void require_input(const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string("missing required input: ") + what);
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// bucket -> (category, campaign); missing file means everything is in scope
struct LabelMap {
    std::map<int, std::pair<std::string, std::string>> rows;
    bool loaded = false;

    bool sextortion(int bucket_id) const {
        if (!loaded) return true;
        auto it = rows.find(bucket_id);
        return it != rows.end() && it->second.first == "sextortion";
    }
    std::string campaign(int bucket_id) const {
        auto it = rows.find(bucket_id);
        return it == rows.end() ? "" : it->second.second;
    }
};

LabelMap load_labels(const std::string& path) {
    LabelMap labels;
    if (path.empty()) return labels;
    labels.loaded = true;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() < 2) throw SchemaError(path, line_no, "expected bucket_id,category[,campaign]");
        labels.rows[std::stoi(f[0])] = {f[1], f.size() > 2 ? f[2] : ""};
    });
    return labels;
}

struct DatapointRow {
    std::string email_id;
    int bucket_id = -1;
    std::string language;
    std::string date;  // as written, may be empty when invalid
    std::vector<std::string> addresses;
    std::optional<util::Cents> amount;
    std::string currency;
    std::optional<util::Cents> amount_usd;
    bool missing_rate = false;
    std::string secret;
};

std::vector<DatapointRow> load_datapoints(const std::string& path) {
    std::vector<DatapointRow> rows;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() != 10) throw SchemaError(path, line_no, "expected 10 datapoint columns");
        DatapointRow row;
        row.email_id = f[0];
        row.bucket_id = std::stoi(f[1]);
        row.language = f[2];
        row.date = f[3];
        if (!f[4].empty()) {
            std::stringstream ss(f[4]);
            std::string a;
            while (std::getline(ss, a, ';')) {
                if (!a.empty()) row.addresses.push_back(a);
            }
        }
        if (!f[5].empty()) row.amount = util::parse_usd(f[5]);
        row.currency = f[6];
        if (!f[7].empty()) row.amount_usd = util::parse_usd(f[7]);
        row.missing_rate = f[8] == "1";
        row.secret = f[9];
        rows.push_back(std::move(row));
    });
    return rows;
}

std::map<std::string, int> load_cluster_map(const std::string& path) {
    std::map<std::string, int> map;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() != 2) throw SchemaError(path, line_no, "expected cluster_id,address");
        map[f[1]] = std::stoi(f[0]);
    });
    return map;
}

cluster::Clustering rebuild_clustering(const std::string& path) {
    cluster::Clustering clustering;
    std::map<int, std::vector<std::string>> by_id;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() != 2) throw SchemaError(path, line_no, "expected cluster_id,address");
        by_id[std::stoi(f[0])].push_back(f[1]);
    });
    for (auto& [id, addrs] : by_id) {
        if (id != static_cast<int>(clustering.clusters.size())) {
            throw DataError(path + ": cluster ids must be contiguous from 0");
        }
        cluster::AddressCluster c;
        c.id = id;
        std::sort(addrs.begin(), addrs.end());
        c.addresses = std::move(addrs);
        clustering.clusters.push_back(std::move(c));
    }
    for (const auto& c : clustering.clusters) {
        for (const auto& a : c.addresses) clustering.by_address.emplace(a, c.id);
    }
    return clustering;
}

std::vector<filters::PaymentRecord> load_payments(const std::string& path) {
    std::vector<filters::PaymentRecord> records;
    util::for_each_csv_row(path, true, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f.size() != 7) throw SchemaError(path, line_no, "expected 7 payment columns");
        filters::PaymentRecord rec;
        rec.ref.tx_id = f[0];
        rec.ref.index = static_cast<std::uint32_t>(std::stoul(f[1]));
        rec.address = f[2];
        rec.timestamp = util::parse_datetime(f[3]);
        rec.value_sat = std::stoll(f[4]);
        if (!f[5].empty()) {
            rec.value_usd = util::parse_usd(f[5]);
        } else {
            rec.missing_price = true;
        }
        std::stringstream ss(f[6]);
        std::string flag;
        while (std::getline(ss, flag, '|')) {
            if (flag == "collector") rec.passed |= static_cast<std::uint8_t>(filters::Filter::collector);
            if (flag == "range") rec.passed |= static_cast<std::uint8_t>(filters::Filter::range);
            if (flag == "moving_money") rec.passed |= static_cast<std::uint8_t>(filters::Filter::moving_money);
        }
        records.push_back(std::move(rec));
    });
    return records;
}

std::string filters_passed_string(const filters::PaymentRecord& rec) {
    std::string out;
    auto add = [&](filters::Filter f, const char* name) {
        if (rec.passed_filter(f)) {
            if (!out.empty()) out.push_back('|');
            out += name;
        }
    };
    add(filters::Filter::collector, "collector");
    add(filters::Filter::range, "range");
    add(filters::Filter::moving_money, "moving_money");
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void stage_bucket(const PipelineConfig& config, const std::string& out_dir) {
    require_input(config.corpus, "corpus");
    const auto emails = corpus::load_corpus_jsonl(config.corpus);
    corpus::BucketingParams params{config.l, config.t};
    const auto buckets = corpus::bucket_emails(emails, params);

    std::unordered_map<std::string, const corpus::Email*> email_by_id;
    for (const auto& e : emails) email_by_id.emplace(e.id, &e);

    {
        auto out = util::open_output(path_in(out_dir, "buckets.jsonl"));
        for (const auto& b : buckets) {
            nlohmann::json j;
            j["bucket_id"] = b.id;
            j["template_email_id"] = b.template_email_id;
            j["member_count"] = b.member_ids.size();
            j["suffix_tokens"] = b.suffix.tokens;
            out << j.dump() << '\n';
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "bucket_membership.csv"));
        util::CsvWriter csv(out);
        csv.row({"email_id", "bucket_id"});
        std::unordered_map<std::string, int> bucket_of;
        for (const auto& b : buckets) {
            for (const auto& id : b.member_ids) bucket_of.emplace(id, b.id);
        }
        for (const auto& e : emails) {  // corpus order
            csv.row({e.id, std::to_string(bucket_of.at(e.id))});
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "bucket_quality.csv"));
        util::CsvWriter csv(out);
        csv.row({"bucket_id", "members", "sampled", "pairs", "jaccard_mean", "jaccard_var"});
        for (const auto& b : buckets) {
            std::vector<std::vector<std::string>> sets;
            sets.reserve(b.member_ids.size());
            for (const auto& id : b.member_ids) {
                const auto tokens = corpus::normalize_and_tokenize(email_by_id.at(id)->body);
                sets.push_back(corpus::token_set(corpus::suffix_of(tokens, config.l).tokens));
            }
            const auto q = corpus::bucket_quality(
                sets, static_cast<std::size_t>(config.quality_sample),
                config.seed * 1000003ULL + static_cast<std::uint64_t>(b.id));
            csv.row({std::to_string(b.id), std::to_string(b.member_ids.size()),
                     std::to_string(q.sampled_members), std::to_string(q.pairs),
                     fmt("%.6f", q.mean), fmt("%.6f", q.variance)});
        }
    }
}

void stage_extract(const PipelineConfig& config, const std::string& out_dir) {
    require_input(config.corpus, "corpus");
    const auto emails = corpus::load_corpus_jsonl(config.corpus);
    corpus::FiatRateTable rates;
    if (!config.rates.empty()) rates = corpus::FiatRateTable::load_csv(config.rates);

    std::unordered_map<std::string, int> bucket_of;
    util::for_each_csv_row(path_in(out_dir, "bucket_membership.csv"), true,
                           [&](std::size_t, const std::vector<std::string>& f) {
                               bucket_of[f[0]] = std::stoi(f[1]);
                           });
    const LabelMap labels = load_labels(config.labels);

    std::map<std::string, std::set<int>> seed_buckets;  // address -> sextortion buckets
    auto out = util::open_output(path_in(out_dir, "datapoints.csv"));
    util::CsvWriter csv(out);
    csv.row({"email_id", "bucket_id", "language", "date", "addresses", "amount", "currency",
             "amount_usd", "missing_rate", "secret"});
    for (const auto& e : emails) {
        const auto dp = corpus::extract_datapoints(e, rates);
        auto it = bucket_of.find(e.id);
        const int bucket = it == bucket_of.end() ? -1 : it->second;
        std::string joined;
        for (std::size_t i = 0; i < dp.payment_addresses.size(); ++i) {
            if (i) joined.push_back(';');
            joined += dp.payment_addresses[i];
        }
        csv.row({e.id, std::to_string(bucket), e.language,
                 e.date_valid ? util::format_datetime(e.date) : "",
                 joined, dp.amount ? util::format_usd(*dp.amount) : "", dp.currency,
                 dp.amount_usd ? util::format_usd(*dp.amount_usd) : "",
                 dp.missing_rate ? "1" : "0", dp.password_or_phone.value_or("")});
        if (bucket >= 0 && labels.sextortion(bucket)) {
            for (const auto& a : dp.payment_addresses) seed_buckets[a].insert(bucket);
        }
    }

    auto seeds_out = util::open_output(path_in(out_dir, "seed_addresses.csv"));
    util::CsvWriter seeds_csv(seeds_out);
    seeds_csv.row({"address", "buckets"});
    for (const auto& [addr, buckets] : seed_buckets) {
        std::string joined;
        for (int b : buckets) {
            if (!joined.empty()) joined.push_back(';');
            joined += std::to_string(b);
        }
        seeds_csv.row({addr, joined});
    }
}

void stage_cluster(const PipelineConfig& config, const std::string& out_dir) {
    require_input(config.ledger, "ledger");
    require_input(config.prices, "prices");
    chain::IngestOptions opts;
    opts.check_fees = config.check_fees;
    if (config.ledger_cutoff) opts.cutoff_timestamp = util::parse_datetime(*config.ledger_cutoff);
    const auto store = chain::ChainStore::ingest_file(config.ledger, opts);
    const auto prices = chain::PriceSeries::load_csv(config.prices);
    cluster::TagMap tags;
    if (!config.tags.empty()) tags = cluster::TagMap::load_csv(config.tags);

    std::vector<std::string> seed_addresses;
    util::for_each_csv_row(path_in(out_dir, "seed_addresses.csv"), true,
                           [&](std::size_t, const std::vector<std::string>& f) {
                               seed_addresses.push_back(f[0]);
                           });

    cluster::CoinJoinParams cj{config.coinjoin_min_equal};
    auto clustering = cluster::multi_input_cluster(store, config.exclude_coinjoin, cj);
    cluster::annotate_clusters(clustering, store, &prices, &tags, &seed_addresses);

    {
        auto out = util::open_output(path_in(out_dir, "coinjoin_txs.csv"));
        util::CsvWriter csv(out);
        csv.row({"tx_id"});
        for (const auto& tx : store.transactions()) {
            if (cluster::detect_coinjoin(tx, cj)) csv.row({tx.tx_id});
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "clusters.csv"));
        util::CsvWriter csv(out);
        csv.row({"cluster_id", "address"});
        for (const auto& c : clustering.clusters) {
            for (const auto& a : c.addresses) csv.row({std::to_string(c.id), a});
        }
    }
    {
        // cluster statistics, largest receiver first
        auto sorted = clustering.clusters;
        std::sort(sorted.begin(), sorted.end(),
                  [](const cluster::AddressCluster& a, const cluster::AddressCluster& b) {
                      if (a.received_usd != b.received_usd) return a.received_usd > b.received_usd;
                      return a.id < b.id;
                  });
        auto out = util::open_output(path_in(out_dir, "cluster_stats.csv"));
        util::CsvWriter csv(out);
        csv.row({"cluster_id", "seed_count", "address_count", "amount_received_usd", "first_tx"});
        for (const auto& c : sorted) {
            csv.row({std::to_string(c.id), std::to_string(c.seed_addresses.size()),
                     std::to_string(c.addresses.size()), util::format_usd(c.received_usd),
                     util::format_date(c.first_tx)});
        }
    }

    const auto seeds = cluster::SeedSet::from_addresses(seed_addresses, store);
    const auto expansion = cluster::expand_seeds(seeds, clustering, config.supercluster_limit);
    {
        auto out = util::open_output(path_in(out_dir, "expanded_addresses.csv"));
        util::CsvWriter csv(out);
        csv.row({"address"});
        for (const auto& a : expansion.addresses) csv.row({a});
    }
    {
        auto out = util::open_output(path_in(out_dir, "expansion_summary.csv"));
        util::CsvWriter csv(out);
        csv.row({"seeds_total", "seeds_funded", "seeds_unclustered", "clusters_touched",
                 "clusters_excluded", "expanded_total"});
        csv.row({std::to_string(seeds.all.size()), std::to_string(seeds.funded.size()),
                 std::to_string(expansion.seeds_unclustered),
                 std::to_string(expansion.clusters_touched),
                 std::to_string(expansion.clusters_excluded),
                 std::to_string(expansion.addresses.size())});
    }
}

void stage_filter(const PipelineConfig& config, const std::string& out_dir) {
    require_input(config.ledger, "ledger");
    require_input(config.prices, "prices");
    chain::IngestOptions opts;
    opts.check_fees = config.check_fees;
    if (config.ledger_cutoff) opts.cutoff_timestamp = util::parse_datetime(*config.ledger_cutoff);
    const auto store = chain::ChainStore::ingest_file(config.ledger, opts);
    const auto prices = chain::PriceSeries::load_csv(config.prices);

    std::set<std::string> expanded;
    util::for_each_csv_row(path_in(out_dir, "expanded_addresses.csv"), true,
                           [&](std::size_t, const std::vector<std::string>& f) {
                               expanded.insert(f[0]);
                           });

    const LabelMap labels = load_labels(config.labels);
    filters::RansomAmountSet S;
    S.p_basis_points = config.p_basis_points;
    for (const auto& row : load_datapoints(path_in(out_dir, "datapoints.csv"))) {
        if (row.amount_usd && labels.sextortion(row.bucket_id)) {
            S.amounts.push_back(*row.amount_usd);
        }
    }

    const auto records = filters::collect_payments(store, expanded, prices, S);
    auto out = util::open_output(path_in(out_dir, "payments.csv"));
    util::CsvWriter csv(out);
    csv.row({"tx_id", "output_index", "address", "timestamp", "value_sat", "value_usd",
             "filters_passed"});
    for (const auto& rec : records) {
        csv.row({rec.ref.tx_id, std::to_string(rec.ref.index), rec.address,
                 util::format_datetime(rec.timestamp), std::to_string(rec.value_sat),
                 rec.value_usd ? util::format_usd(*rec.value_usd) : "",
                 filters_passed_string(rec)});
    }
}

void stage_trace(const PipelineConfig& config, const std::string& out_dir) {
    require_input(config.ledger, "ledger");
    require_input(config.prices, "prices");
    chain::IngestOptions opts;
    opts.check_fees = config.check_fees;
    if (config.ledger_cutoff) opts.cutoff_timestamp = util::parse_datetime(*config.ledger_cutoff);
    const auto store = chain::ChainStore::ingest_file(config.ledger, opts);
    const auto prices = chain::PriceSeries::load_csv(config.prices);
    cluster::TagMap tags;
    if (!config.tags.empty()) tags = cluster::TagMap::load_csv(config.tags);

    auto clustering = rebuild_clustering(path_in(out_dir, "clusters.csv"));
    cluster::annotate_clusters(clustering, store, &prices, &tags, nullptr);

    const auto all_records = load_payments(path_in(out_dir, "payments.csv"));
    std::vector<filters::PaymentRecord> kept;
    util::Satoshi revenue_sat = 0;
    for (const auto& rec : all_records) {
        if (rec.kept(filters::FilterCombo::one_two)) {
            kept.push_back(rec);
            revenue_sat += rec.value_sat;
        }
    }

    const auto holding = flows::holding_periods(kept, store);
    {
        auto out = util::open_output(path_in(out_dir, "holding_periods.csv"));
        util::CsvWriter csv(out);
        csv.row({"tx_id", "output_index", "received_at", "spent_at", "hours", "value_sat"});
        for (const auto& hp : holding.periods) {
            csv.row({hp.payment.tx_id, std::to_string(hp.payment.index),
                     util::format_datetime(hp.received_at), util::format_datetime(hp.spent_at),
                     fmt("%.4f", hp.hours), std::to_string(hp.amount_sat)});
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "holding_summary.csv"));
        util::CsvWriter csv(out);
        csv.row({"spent_count", "unspent_count", "unspent_sat", "total_spent_sat", "mean_days",
                 "median_days"});
        csv.row({std::to_string(holding.periods.size()), std::to_string(holding.unspent_count),
                 std::to_string(holding.unspent_sat), std::to_string(holding.total_spent_sat),
                 fmt("%.6f", holding.mean_days), fmt("%.6f", holding.median_days)});
    }
    {
        auto out = util::open_output(path_in(out_dir, "holding_histogram.csv"));
        util::CsvWriter csv(out);
        csv.row({"bin_start_hours", "btc_amount"});
        std::vector<util::SvgPoint> bins;
        for (const auto& bin : holding.histogram) {
            csv.row({std::to_string(bin.start_hours), fmt("%.8f", bin.btc)});
            bins.push_back({static_cast<double>(bin.start_hours), bin.btc});
        }
        util::write_file(path_in(out_dir, "holding_histogram.svg"),
                         util::svg_histogram("Holding periods (BTC per 10h bin)", bins, 10.0));
    }

    flows::TraceParams params;
    params.max_depth = config.max_depth;
    params.width_limit = static_cast<std::size_t>(config.width_limit);
    const auto traversal = flows::trace_flows(kept, store, clustering, tags, params);
    {
        auto out = util::open_output(path_in(out_dir, "flow_levels.csv"));
        util::CsvWriter csv(out);
        csv.row({"depth", "address", "cluster_id", "tag", "traced_btc", "stop_reason"});
        for (const auto& level : traversal.levels) {
            for (const auto& node : level.nodes) {
                csv.row({std::to_string(level.depth), node.address,
                         node.cluster_id >= 0 ? std::to_string(node.cluster_id) : "",
                         node.tag.value_or(""), fmt("%.8f", node.traced_btc),
                         flows::stop_reason_name(node.stop)});
            }
        }
    }
    for (int d = 1; d <= config.max_depth; ++d) {
        const auto table = flows::depth_table(traversal, d, store, clustering, prices);
        auto out = util::open_output(
            path_in(out_dir, ("depth_table_" + std::to_string(d) + ".csv").c_str()));
        util::CsvWriter csv(out);
        csv.row({"cluster_id", "total_spent_usd", "first_tx", "txs_out", "btc_received"});
        for (const auto& row : table) {
            csv.row({std::to_string(row.cluster_id), util::format_usd(row.total_spent_usd),
                     util::format_date(row.first_tx), std::to_string(row.txs_out),
                     fmt("%.8f", row.btc_received)});
        }
    }
    {
        const std::int64_t cutoff = util::parse_date(config.cutoff_date) * util::seconds_per_day;
        const auto cashout = flows::cashout_candidates(traversal, clustering, store, cutoff,
                                                       revenue_sat);
        auto out = util::open_output(path_in(out_dir, "cashout.csv"));
        util::CsvWriter csv(out);
        csv.row({"cutoff", "btc", "fraction_of_revenue", "revenue_basis"});
        csv.row({config.cutoff_date, fmt("%.8f", cashout.btc),
                 fmt("%.6f", cashout.fraction_of_revenue), "1+2"});
    }
}

void stage_stats(const PipelineConfig& config, const std::string& out_dir) {
    const auto rows = load_datapoints(path_in(out_dir, "datapoints.csv"));
    const LabelMap labels = load_labels(config.labels);

    std::map<std::string, std::vector<double>> amounts_by_key;
    std::vector<std::string> secrets;
    for (const auto& row : rows) {
        if (!labels.sextortion(row.bucket_id)) continue;
        if (!row.secret.empty()) secrets.push_back(row.secret);
        if (!row.amount_usd) continue;
        std::string key = config.group_by == "campaign" ? labels.campaign(row.bucket_id)
                                                        : row.language;
        if (key.empty()) key = "(unknown)";
        amounts_by_key[key].push_back(static_cast<double>(*row.amount_usd) / 100.0);
    }

    std::vector<stats::AmountGroup> groups;
    for (auto& [key, amounts] : amounts_by_key) {
        groups.push_back(stats::AmountGroup::make(key, std::move(amounts)));
    }

    {
        auto out = util::open_output(path_in(out_dir, "stats_groups.csv"));
        util::CsvWriter csv(out);
        csv.row({"group", "n", "mean", "std", "sem"});
        for (const auto& g : groups) {
            csv.row({g.key, std::to_string(g.n), fmt("%.6f", g.mean), fmt("%.6f", g.sd),
                     fmt("%.6f", g.sem)});
        }
    }

    stats::NormalityParams nparams;
    nparams.resamples = config.normality_resamples;
    nparams.sample_size = config.normality_sample_size;
    nparams.alpha = config.alpha;
    std::vector<stats::AmountGroup> passing;
    {
        auto out = util::open_output(path_in(out_dir, "stats_normality.csv"));
        util::CsvWriter csv(out);
        csv.row({"group", "n", "passed", "reason", "jb_statistic", "critical"});
        for (const auto& g : groups) {
            std::string passed = "0", reason, jb = "", critical = "";
            try {
                const auto res = stats::normality_screen(g, nparams, config.seed ^ fnv1a(g.key));
                passed = res.passed ? "1" : "0";
                reason = res.reason;
                jb = fmt("%.6f", res.jb_statistic);
                critical = fmt("%.6f", res.critical);
                if (res.passed) passing.push_back(g);
            } catch (const GroupTooSmallError&) {
                reason = "group too small";
            }
            csv.row({g.key, std::to_string(g.n), passed, reason, jb, critical});
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "stats_tests.csv"));
        util::CsvWriter csv(out);
        csv.row({"a", "b", "t", "df", "p", "p_adj", "reject"});
        if (passing.size() >= 2) {
            const auto analysis = stats::pairwise_analysis(passing, config.alpha);
            for (const auto& r : analysis.results) {
                csv.row({r.group_a, r.group_b, fmt("%.10g", r.t), fmt("%.10g", r.df),
                         fmt("%.10g", r.p_value), fmt("%.10g", r.p_adjusted),
                         r.reject ? "1" : "0"});
            }
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "breach_match.csv"));
        util::CsvWriter csv(out);
        csv.row({"candidates", "sampled", "matched", "rate"});
        if (!config.breach_files.empty()) {
            const auto res = stats::breach_match(secrets, config.breach_files,
                                                 config.breach_fraction, config.seed);
            csv.row({std::to_string(res.candidates), std::to_string(res.sampled),
                     std::to_string(res.matched), fmt("%.6f", res.rate)});
        }
    }
}

void stage_linkage(const PipelineConfig& config, const std::string& out_dir) {
    const auto rows = load_datapoints(path_in(out_dir, "datapoints.csv"));
    const LabelMap labels = load_labels(config.labels);
    const auto cluster_of = load_cluster_map(path_in(out_dir, "clusters.csv"));

    std::map<int, linkage::BucketNode> nodes;
    for (const auto& row : rows) {
        if (row.bucket_id < 0 || !labels.sextortion(row.bucket_id)) continue;
        auto& node = nodes[row.bucket_id];
        node.bucket_id = row.bucket_id;
        node.campaign = labels.campaign(row.bucket_id);
        ++node.email_count;
        node.addresses.insert(row.addresses.begin(), row.addresses.end());
    }
    std::vector<linkage::BucketNode> node_list;
    node_list.reserve(nodes.size());
    for (auto& [id, node] : nodes) node_list.push_back(std::move(node));

    const auto graph = linkage::build_linkage(node_list, cluster_of);
    {
        auto out = util::open_output(path_in(out_dir, "linkage_edges.csv"));
        linkage::write_edges_csv(graph, out);
    }
    {
        auto out = util::open_output(path_in(out_dir, "linkage_components.csv"));
        linkage::write_components_csv(linkage::components(graph), out);
    }
    {
        auto out = util::open_output(path_in(out_dir, "linkage.dot"));
        linkage::write_dot(graph, out);
    }
}

void stage_report(const PipelineConfig& config, const std::string& out_dir) {
    const auto records = load_payments(path_in(out_dir, "payments.csv"));

    // address -> linkage component, threaded through clusters
    std::map<std::string, int> component_of_address;
    const std::string comp_path = path_in(out_dir, "linkage_components.csv");
    if (fs::exists(comp_path)) {
        // component ids follow the linkage stage's ordering (size-major);
        // rebuild the same graph to attribute addresses to components
        const auto rows = load_datapoints(path_in(out_dir, "datapoints.csv"));
        const LabelMap labels = load_labels(config.labels);
        const auto cluster_of = load_cluster_map(path_in(out_dir, "clusters.csv"));
        std::map<int, linkage::BucketNode> nodes;
        for (const auto& row : rows) {
            if (row.bucket_id < 0 || !labels.sextortion(row.bucket_id)) continue;
            auto& node = nodes[row.bucket_id];
            node.bucket_id = row.bucket_id;
            ++node.email_count;
            node.addresses.insert(row.addresses.begin(), row.addresses.end());
        }
        std::vector<linkage::BucketNode> node_list;
        for (auto& [id, node] : nodes) node_list.push_back(std::move(node));
        const auto graph = linkage::build_linkage(node_list, cluster_of);
        const auto comps = linkage::components(graph);
        std::map<int, int> comp_of_bucket;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            for (int b : comps[i].bucket_ids) comp_of_bucket[b] = static_cast<int>(i);
        }
        std::map<int, int> comp_of_cluster;
        for (const auto& node : node_list) {
            const int comp = comp_of_bucket.at(node.bucket_id);
            for (const auto& addr : node.addresses) {
                component_of_address[addr] = comp;
                auto it = cluster_of.find(addr);
                if (it != cluster_of.end()) comp_of_cluster[it->second] = comp;
            }
        }
        // expanded addresses inherit the component of their cluster
        const std::string exp_path = path_in(out_dir, "expanded_addresses.csv");
        if (fs::exists(exp_path)) {
            util::for_each_csv_row(exp_path, true,
                                   [&](std::size_t, const std::vector<std::string>& f) {
                                       if (component_of_address.count(f[0])) return;
                                       auto it = cluster_of.find(f[0]);
                                       if (it == cluster_of.end()) return;
                                       auto cit = comp_of_cluster.find(it->second);
                                       if (cit != comp_of_cluster.end()) {
                                           component_of_address[f[0]] = cit->second;
                                       }
                                   });
        }
    }

    const auto report12 = filters::revenue_report(
        records, filters::FilterCombo::one_two,
        component_of_address.empty() ? nullptr : &component_of_address);
    const auto report123 = filters::revenue_report(records, filters::FilterCombo::one_two_three);

    {
        auto out = util::open_output(path_in(out_dir, "revenue_combos.csv"));
        util::CsvWriter csv(out);
        csv.row({"filters", "payments", "revenue_usd", "revenue_btc"});
        csv.row({"1+2", std::to_string(report12.payments), util::format_usd(report12.usd),
                 util::format_btc(report12.sat)});
        csv.row({"1+2+3", std::to_string(report123.payments), util::format_usd(report123.usd),
                 util::format_btc(report123.sat)});
    }
    {
        auto out = util::open_output(path_in(out_dir, "revenue_monthly.csv"));
        util::CsvWriter csv(out);
        csv.row({"combo", "month", "payments", "revenue_usd", "revenue_btc", "cumulative_usd"});
        for (const auto& row : report12.monthly) {
            csv.row({"1+2", row.month, std::to_string(row.payments), util::format_usd(row.usd),
                     util::format_btc(row.sat), util::format_usd(row.cumulative_usd)});
        }
        for (const auto& row : report123.monthly) {
            csv.row({"1+2+3", row.month, std::to_string(row.payments), util::format_usd(row.usd),
                     util::format_btc(row.sat), util::format_usd(row.cumulative_usd)});
        }
    }
    {
        auto out = util::open_output(path_in(out_dir, "revenue_components.csv"));
        util::CsvWriter csv(out);
        csv.row({"component", "payments", "revenue_usd", "revenue_btc", "usd_share"});
        for (const auto& row : report12.components) {
            csv.row({std::to_string(row.component), std::to_string(row.payments),
                     util::format_usd(row.usd), util::format_btc(row.sat),
                     fmt("%.6f", row.usd_share)});
        }
    }
    {
        std::vector<util::SvgPoint> cumulative;
        for (const auto& row : report12.monthly) {
            cumulative.push_back({static_cast<double>(cumulative.size()),
                                  static_cast<double>(row.cumulative_usd) / 100.0});
        }
        util::write_file(path_in(out_dir, "revenue_cumulative.svg"),
                         util::svg_line_chart("Cumulative revenue (USD), filters 1+2", cumulative));

        std::vector<util::SvgPoint> scatter;
        for (const auto& rec : records) {
            if (!rec.kept(filters::FilterCombo::one_two)) continue;
            scatter.push_back({static_cast<double>(rec.timestamp) / 86400.0,
                               static_cast<double>(rec.value_usd.value_or(0)) / 100.0});
        }
        util::write_file(path_in(out_dir, "payments_scatter.svg"),
                         util::svg_scatter("Individual payments (USD)", scatter));
    }
    {
        nlohmann::json j;
        j["parameters"] = {{"l", config.l},
                           {"t", config.t},
                           {"p", util::format_scaled_decimal(config.p_basis_points, 4)},
                           {"supercluster_limit", config.supercluster_limit},
                           {"max_depth", config.max_depth},
                           {"width_limit", config.width_limit},
                           {"cutoff_date", config.cutoff_date},
                           {"alpha", config.alpha},
                           {"seed", config.seed}};
        j["revenue"] = {
            {"combo_1_2",
             {{"payments", report12.payments}, {"usd_cents", report12.usd}, {"sat", report12.sat}}},
            {"combo_1_2_3",
             {{"payments", report123.payments},
              {"usd_cents", report123.usd},
              {"sat", report123.sat}}}};
        util::write_file(path_in(out_dir, "report.json"), j.dump(2) + "\n");
    }
}

}  // namespace spamflow::pipeline
