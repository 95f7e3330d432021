#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "spamflow/pipeline/config.hpp"
#include "spamflow/pipeline/fixture.hpp"
#include "spamflow/pipeline/pipeline.hpp"
#include "spamflow/pipeline/stages.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/money.hpp"

namespace {

using spamflow::pipeline::PipelineConfig;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";

    std::string corpus, ledger, prices, rates, tags, labels;
    std::vector<std::string> breach;
    std::optional<int> l;
    std::optional<double> t;
    std::optional<std::string> p;
    std::optional<std::int64_t> supercluster_limit;
    std::optional<int> max_depth;
    std::optional<std::int64_t> width_limit;
    std::optional<std::string> cutoff;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> group_by;
    std::optional<double> breach_fraction;
    std::optional<bool> exclude_coinjoin;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "pipeline config file (INI sections)");
    cmd->add_option("--out-dir,-o", args.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--corpus", args.corpus, "corpus JSONL");
    cmd->add_option("--ledger", args.ledger, "transaction-ledger JSONL");
    cmd->add_option("--prices", args.prices, "daily USD/BTC prices CSV");
    cmd->add_option("--rates", args.rates, "daily fiat rates CSV");
    cmd->add_option("--tags", args.tags, "attribution tags CSV");
    cmd->add_option("--labels", args.labels, "bucket labels CSV");
    cmd->add_option("--breach", args.breach, "breach wordlist file(s)");
    cmd->add_option("--l", args.l, "trailing-word count for bucketing");
    cmd->add_option("--t", args.t, "bucket merge threshold");
    cmd->add_option("--p", args.p, "RangeFilter tolerance, e.g. 0.1");
    cmd->add_option("--supercluster-limit", args.supercluster_limit);
    cmd->add_option("--max-depth", args.max_depth, "flow traversal depth limit");
    cmd->add_option("--width-limit", args.width_limit, "flow nodes per depth");
    cmd->add_option("--cutoff", args.cutoff, "cash-out first-tx cutoff date");
    cmd->add_option("--alpha", args.alpha, "significance level");
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--group-by", args.group_by, "stats grouping: language|campaign");
    cmd->add_option("--breach-fraction", args.breach_fraction);
    cmd->add_flag("--include-coinjoin{false},--exclude-coinjoin{true}", args.exclude_coinjoin,
                  "toggle CoinJoin exclusion in clustering");
}

PipelineConfig resolve_config(const CommonArgs& args) {
    PipelineConfig cfg;
    if (!args.config_path.empty()) cfg = PipelineConfig::load_file(args.config_path);
    if (!args.corpus.empty()) cfg.corpus = args.corpus;
    if (!args.ledger.empty()) cfg.ledger = args.ledger;
    if (!args.prices.empty()) cfg.prices = args.prices;
    if (!args.rates.empty()) cfg.rates = args.rates;
    if (!args.tags.empty()) cfg.tags = args.tags;
    if (!args.labels.empty()) cfg.labels = args.labels;
    if (!args.breach.empty()) cfg.breach_files = args.breach;
    if (args.l) cfg.l = *args.l;
    if (args.t) cfg.t = *args.t;
    if (args.p) cfg.p_basis_points = spamflow::util::parse_scaled_decimal(*args.p, 4);
    if (args.supercluster_limit) cfg.supercluster_limit = *args.supercluster_limit;
    if (args.max_depth) cfg.max_depth = *args.max_depth;
    if (args.width_limit) cfg.width_limit = *args.width_limit;
    if (args.cutoff) cfg.cutoff_date = *args.cutoff;
    if (args.alpha) cfg.alpha = *args.alpha;
    if (args.seed) cfg.seed = *args.seed;
    if (args.group_by) cfg.group_by = *args.group_by;
    if (args.breach_fraction) cfg.breach_fraction = *args.breach_fraction;
    if (args.exclude_coinjoin) cfg.exclude_coinjoin = *args.exclude_coinjoin;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spamflow: spam-campaign bucketing and payment-flow analytics"};
    app.require_subcommand(1);

    CommonArgs args;
    std::function<void(const PipelineConfig&, const std::string&)> action;

    struct StageCmd {
        const char* name;
        const char* help;
        void (*fn)(const PipelineConfig&, const std::string&);
    };
    static const StageCmd stage_cmds[] = {
        {"bucket", "group emails into buckets by trailing-word similarity",
         spamflow::pipeline::stage_bucket},
        {"extract", "pull addresses, amounts and secrets out of emails",
         spamflow::pipeline::stage_extract},
        {"cluster", "multiple-input clustering with CoinJoin exclusion",
         spamflow::pipeline::stage_cluster},
        {"filter", "apply the collector/range/moving-money payment filters",
         spamflow::pipeline::stage_filter},
        {"trace", "holding periods and depth-limited flow traversal",
         spamflow::pipeline::stage_trace},
        {"stats", "pricing-strategy tests and breach-password matching",
         spamflow::pipeline::stage_stats},
        {"linkage", "bucket-linkage graph and connected components",
         spamflow::pipeline::stage_linkage},
        {"report", "revenue totals, series and figures", spamflow::pipeline::stage_report},
    };
    for (const auto& sc : stage_cmds) {
        auto* cmd = app.add_subcommand(sc.name, sc.help);
        add_common_options(cmd, args);
        cmd->callback([&action, fn = sc.fn] { action = fn; });
    }
    {
        auto* cmd = app.add_subcommand("run", "run every stage and write a manifest");
        add_common_options(cmd, args);
        cmd->callback([&action] { action = spamflow::pipeline::run_pipeline; });
    }

    // fixture generator has its own arguments
    std::string fixture_out = "fixture";
    std::string fixture_spec_path;
    std::uint64_t fixture_seed = 42;
    spamflow::pipeline::FixtureSpec fx;
    bool run_fixture = false;
    {
        auto* cmd = app.add_subcommand("fixture",
                                       "generate a synthetic corpus+ledger with ground truth");
        cmd->add_option("--out-dir,-o", fixture_out, "fixture directory")->capture_default_str();
        cmd->add_option("--spec", fixture_spec_path, "FixtureSpec JSON file");
        cmd->add_option("--seed", fixture_seed, "RNG seed")->capture_default_str();
        cmd->add_option("--campaigns", fx.campaigns)->capture_default_str();
        cmd->add_option("--emails-per-campaign", fx.emails_per_campaign)->capture_default_str();
        cmd->callback([&run_fixture] { run_fixture = true; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run_fixture) {
            spamflow::pipeline::FixtureSpec spec = fx;
            if (!fixture_spec_path.empty()) {
                spec = spamflow::pipeline::FixtureSpec::from_json_file(fixture_spec_path);
            }
            spamflow::pipeline::generate_fixture(spec, fixture_seed, fixture_out);
        } else {
            const PipelineConfig cfg = resolve_config(args);
            action(cfg, args.out_dir);
        }
    } catch (const spamflow::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        switch (e.kind()) {
            case spamflow::ErrorKind::config: return 2;
            case spamflow::ErrorKind::data: return 3;
            case spamflow::ErrorKind::internal: return 4;
        }
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
    return 0;
}
