#pragma once

#include <string>

#include "spamflow/pipeline/config.hpp"

namespace spamflow::pipeline {

// Runs every stage in order (bucket, extract, cluster, filter, trace,
// stats, linkage, report) and writes manifest.csv listing each emitted
// file with its SHA-256. A stage failure leaves partial outputs plus a
// FAILED marker naming the stage and cause, then rethrows.
void run_pipeline(const PipelineConfig& config, const std::string& out_dir);

// SHA-256 manifest of every regular file under dir (relative paths, sorted),
// excluding the manifest itself and the FAILED marker.
std::string build_manifest(const std::string& dir);

}  // namespace spamflow::pipeline
