#pragma once

#include <string>

#include "spamflow/pipeline/config.hpp"

namespace spamflow::pipeline {

// One stage = one CLI subcommand. Every stage reads its inputs (source
// files from the config, intermediate files from out_dir) and writes its
// artifacts into out_dir, so any stage can be re-run standalone against a
// directory produced by earlier stages.
//
// Files produced:
//   bucket   -> buckets.jsonl, bucket_membership.csv, bucket_quality.csv
//   extract  -> datapoints.csv, seed_addresses.csv
//   cluster  -> clusters.csv, cluster_stats.csv, coinjoin_txs.csv,
//               expanded_addresses.csv, expansion_summary.csv
//   filter   -> payments.csv
//   trace    -> holding_periods.csv, holding_summary.csv,
//               holding_histogram.csv, holding_histogram.svg,
//               flow_levels.csv, depth_table_<d>.csv, cashout.csv
//   stats    -> stats_groups.csv, stats_normality.csv, stats_tests.csv,
//               breach_match.csv
//   linkage  -> linkage_edges.csv, linkage_components.csv, linkage.dot
//   report   -> revenue_combos.csv, revenue_monthly.csv,
//               revenue_components.csv, revenue_cumulative.svg,
//               payments_scatter.svg, report.json
void stage_bucket(const PipelineConfig& config, const std::string& out_dir);
void stage_extract(const PipelineConfig& config, const std::string& out_dir);
void stage_cluster(const PipelineConfig& config, const std::string& out_dir);
void stage_filter(const PipelineConfig& config, const std::string& out_dir);
void stage_trace(const PipelineConfig& config, const std::string& out_dir);
void stage_stats(const PipelineConfig& config, const std::string& out_dir);
void stage_linkage(const PipelineConfig& config, const std::string& out_dir);
void stage_report(const PipelineConfig& config, const std::string& out_dir);

}  // namespace spamflow::pipeline
