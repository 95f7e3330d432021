#include "spamflow/pipeline/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/money.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::pipeline {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& value) {
    double out{};
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t out{};
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("bad integer value for " + key + ": '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("bad boolean value for " + key + ": '" + value + "'");
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);  // shortest round-trip form
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ';' || c == ',') {
            if (const auto item = trim(cur); !item.empty()) out.push_back(item);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (const auto item = trim(cur); !item.empty()) out.push_back(item);
    return out;
}

}  // namespace

PipelineConfig PipelineConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);

    PipelineConfig cfg;
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            if (section != "inputs" && section != "params") {
                throw ConfigError(path + ":" + std::to_string(line_no) +
                                  ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (section == "inputs") {
            if (key == "corpus") cfg.corpus = value;
            else if (key == "ledger") cfg.ledger = value;
            else if (key == "prices") cfg.prices = value;
            else if (key == "rates") cfg.rates = value;
            else if (key == "tags") cfg.tags = value;
            else if (key == "labels") cfg.labels = value;
            else if (key == "breach") cfg.breach_files = split_list(value);
            else throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown input key '" + key + "'");
        } else if (section == "params") {
            if (key == "l") cfg.l = static_cast<int>(parse_int(key, value));
            else if (key == "t") cfg.t = parse_double(key, value);
            else if (key == "p") cfg.p_basis_points = util::parse_scaled_decimal(value, 4);
            else if (key == "supercluster_limit") cfg.supercluster_limit = parse_int(key, value);
            else if (key == "max_depth") cfg.max_depth = static_cast<int>(parse_int(key, value));
            else if (key == "width_limit") cfg.width_limit = parse_int(key, value);
            else if (key == "cutoff_date") cfg.cutoff_date = value;
            else if (key == "alpha") cfg.alpha = parse_double(key, value);
            else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
            else if (key == "quality_sample") cfg.quality_sample = parse_int(key, value);
            else if (key == "normality_resamples") cfg.normality_resamples = static_cast<int>(parse_int(key, value));
            else if (key == "normality_sample_size") cfg.normality_sample_size = static_cast<int>(parse_int(key, value));
            else if (key == "breach_fraction") cfg.breach_fraction = parse_double(key, value);
            else if (key == "coinjoin_min_equal") cfg.coinjoin_min_equal = static_cast<int>(parse_int(key, value));
            else if (key == "exclude_coinjoin") cfg.exclude_coinjoin = parse_bool(key, value);
            else if (key == "check_fees") cfg.check_fees = parse_bool(key, value);
            else if (key == "group_by") cfg.group_by = value;
            else if (key == "ledger_cutoff") cfg.ledger_cutoff = value;
            else throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown param key '" + key + "'");
        } else {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": key outside a section");
        }
    }
    return cfg;
}

void PipelineConfig::save_file(const std::string& path) const {
    std::ostringstream out;
    out << "[inputs]\n";
    if (!corpus.empty()) out << "corpus = " << corpus << "\n";
    if (!ledger.empty()) out << "ledger = " << ledger << "\n";
    if (!prices.empty()) out << "prices = " << prices << "\n";
    if (!rates.empty()) out << "rates = " << rates << "\n";
    if (!tags.empty()) out << "tags = " << tags << "\n";
    if (!labels.empty()) out << "labels = " << labels << "\n";
    if (!breach_files.empty()) {
        out << "breach = ";
        for (std::size_t i = 0; i < breach_files.size(); ++i) {
            if (i) out << ";";
            out << breach_files[i];
        }
        out << "\n";
    }
    out << "\n[params]\n";
    out << "l = " << l << "\n";
    out << "t = " << format_double(t) << "\n";
    out << "p = " << util::format_scaled_decimal(p_basis_points, 4) << "\n";
    out << "supercluster_limit = " << supercluster_limit << "\n";
    out << "max_depth = " << max_depth << "\n";
    out << "width_limit = " << width_limit << "\n";
    out << "cutoff_date = " << cutoff_date << "\n";
    out << "alpha = " << format_double(alpha) << "\n";
    out << "seed = " << seed << "\n";
    out << "quality_sample = " << quality_sample << "\n";
    out << "normality_resamples = " << normality_resamples << "\n";
    out << "normality_sample_size = " << normality_sample_size << "\n";
    out << "breach_fraction = " << format_double(breach_fraction) << "\n";
    out << "coinjoin_min_equal = " << coinjoin_min_equal << "\n";
    out << "exclude_coinjoin = " << (exclude_coinjoin ? "true" : "false") << "\n";
    out << "check_fees = " << (check_fees ? "true" : "false") << "\n";
    out << "group_by = " << group_by << "\n";
    if (ledger_cutoff) out << "ledger_cutoff = " << *ledger_cutoff << "\n";
    util::write_file(path, out.str());
}

void PipelineConfig::validate() const {
    if (l < 1) throw ConfigError("l must be >= 1");
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must be in (0,1)");
    if (p_basis_points < 0 || p_basis_points >= 10000) throw ConfigError("p must be in [0,1)");
    if (supercluster_limit < 1) throw ConfigError("supercluster_limit must be >= 1");
    if (max_depth < 0) throw ConfigError("max_depth must be >= 0");
    if (width_limit < 1) throw ConfigError("width_limit must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
    if (quality_sample < 1) throw ConfigError("quality_sample must be >= 1");
    if (normality_resamples < 1) throw ConfigError("normality_resamples must be >= 1");
    if (normality_sample_size < 2) throw ConfigError("normality_sample_size must be >= 2");
    if (breach_fraction < 0.0 || breach_fraction > 1.0) {
        throw ConfigError("breach_fraction must be in [0,1]");
    }
    if (coinjoin_min_equal < 2) throw ConfigError("coinjoin_min_equal must be >= 2");
    if (group_by != "language" && group_by != "campaign") {
        throw ConfigError("group_by must be 'language' or 'campaign'");
    }
    util::parse_date(cutoff_date);  // must parse
    if (ledger_cutoff) util::parse_datetime(*ledger_cutoff);
}

}  // namespace spamflow::pipeline
