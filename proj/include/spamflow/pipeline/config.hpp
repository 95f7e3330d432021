#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spamflow::pipeline {

// Declarative run configuration. Loaded from an INI-style file with
// [inputs] and [params] sections; CLI flags override individual values.
struct PipelineConfig {
    // [inputs]
    std::string corpus;
    std::string ledger;
    std::string prices;
    std::string rates;
    std::string tags;
    std::string labels;
    std::vector<std::string> breach_files;

    // [params]
    int l = 50;
    double t = 0.3;
    std::int64_t p_basis_points = 1000;  // RangeFilter tolerance p = 0.1
    std::int64_t supercluster_limit = 10000;
    int max_depth = 2;
    std::int64_t width_limit = 100;
    std::string cutoff_date = "2018-06-01";  // cash-out cluster age cutoff
    double alpha = 0.05;
    std::uint64_t seed = 42;

    std::int64_t quality_sample = 200;   // bucket_quality member sample
    int normality_resamples = 100;
    int normality_sample_size = 30;
    double breach_fraction = 0.25;
    int coinjoin_min_equal = 2;
    bool exclude_coinjoin = true;
    bool check_fees = true;
    std::string group_by = "language";  // or "campaign"
    std::optional<std::string> ledger_cutoff;  // ignore txs after this time

    static PipelineConfig load_file(const std::string& path);
    void save_file(const std::string& path) const;

    // Throws ConfigError when a parameter is outside its documented range.
    void validate() const;
};

}  // namespace spamflow::pipeline
