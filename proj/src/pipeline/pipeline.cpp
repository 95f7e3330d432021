#include "spamflow/pipeline/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <span>
#include <vector>

#include "spamflow/pipeline/stages.hpp"
#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/sha256.hpp"

namespace spamflow::pipeline {

namespace fs = std::filesystem;

std::string build_manifest(const std::string& dir) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name == "manifest.csv" || name == "FAILED") continue;
        names.push_back(name);
    }
    std::sort(names.begin(), names.end());

    std::string out = "path,sha256\n";
    for (const auto& name : names) {
        const std::string content = util::read_file((fs::path(dir) / name).string());
        const auto digest = util::sha256(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(content.data()), content.size()));
        out += name + "," + util::hex(digest) + "\n";
    }
    return out;
}

void run_pipeline(const PipelineConfig& config, const std::string& out_dir) {
    config.validate();
    if (config.corpus.empty()) throw ConfigError("missing required input: corpus");
    if (config.ledger.empty()) throw ConfigError("missing required input: ledger");
    if (config.prices.empty()) throw ConfigError("missing required input: prices");
    fs::create_directories(out_dir);

    struct Stage {
        const char* name;
        void (*fn)(const PipelineConfig&, const std::string&);
    };
    static const Stage stages[] = {
        {"bucket", stage_bucket},   {"extract", stage_extract}, {"cluster", stage_cluster},
        {"filter", stage_filter},   {"trace", stage_trace},     {"stats", stage_stats},
        {"linkage", stage_linkage}, {"report", stage_report},
    };

    for (const auto& stage : stages) {
        try {
            stage.fn(config, out_dir);
        } catch (const std::exception& e) {
            util::write_file((fs::path(out_dir) / "FAILED").string(),
                             std::string(stage.name) + ": " + e.what() + "\n");
            throw;
        }
    }
    util::write_file((fs::path(out_dir) / "manifest.csv").string(), build_manifest(out_dir));
}

}  // namespace spamflow::pipeline
