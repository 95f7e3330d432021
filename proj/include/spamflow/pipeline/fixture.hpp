#pragma once

#include <cstdint>
#include <string>

namespace spamflow::pipeline {

// Knobs for the synthetic corpus + ledger generator. The generated bundle
// carries its own ground-truth report (ground_truth.json) plus a ready
// pipeline config (fixture.conf), so every heuristic in the toolkit can be
// verified at desk scale against planned values.
struct FixtureSpec {
    int campaigns = 20;
    int emails_per_campaign = 500;
    int payments_per_campaign = 4;
    int other_campaigns = 0;  // extra non-sextortion buckets (labeled "other")
    int other_emails = 40;
    std::string corpus_start = "2018-09-01";

    static FixtureSpec from_json_file(const std::string& path);
};

// Deterministic under (spec, seed): regenerating produces byte-identical
// files. Writes corpus.jsonl, ledger.jsonl, prices.csv, rates.csv, tags.csv,
// labels.csv, breach_1.txt, breach_2.txt, fixture.conf, ground_truth.json.
void generate_fixture(const FixtureSpec& spec, std::uint64_t seed, const std::string& out_dir);

}  // namespace spamflow::pipeline
