#include "spamflow/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_set>

#include "spamflow/util/errors.hpp"
#include "spamflow/util/rng.hpp"

namespace spamflow::stats {

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw InternalError("ibeta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0 || std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

AmountGroup AmountGroup::make(std::string key, std::vector<double> amounts) {
    AmountGroup g;
    g.key = std::move(key);
    g.amounts_usd = std::move(amounts);
    g.n = g.amounts_usd.size();
    if (g.n == 0) return g;
    double sum = 0.0;
    for (double v : g.amounts_usd) sum += v;
    g.mean = sum / static_cast<double>(g.n);
    if (g.n >= 2) {
        double ss = 0.0;
        for (double v : g.amounts_usd) ss += (v - g.mean) * (v - g.mean);
        g.sd = std::sqrt(ss / static_cast<double>(g.n - 1));
        g.sem = g.sd / std::sqrt(static_cast<double>(g.n));
    }
    return g;
}

TestResult welch_t_test(const AmountGroup& a, const AmountGroup& b, double alpha) {
    if (a.n < 2 || b.n < 2) {
        throw DataError("welch_t_test: both groups need at least two samples");
    }
    const double var_a = a.sd * a.sd;
    const double var_b = b.sd * b.sd;
    if (var_a == 0.0 && var_b == 0.0) {
        throw DegenerateVarianceError("welch_t_test: both groups have zero variance (" + a.key +
                                      " vs " + b.key + ")");
    }
    const double ratio_a = var_a / static_cast<double>(a.n);
    const double ratio_b = var_b / static_cast<double>(b.n);
    const double denom = std::sqrt(ratio_a + ratio_b);

    TestResult r;
    r.group_a = a.key;
    r.group_b = b.key;
    r.t = (a.mean - b.mean) / denom;
    const double num = (ratio_a + ratio_b) * (ratio_a + ratio_b);
    r.df = num / (ratio_a * ratio_a / static_cast<double>(a.n - 1) +
                  ratio_b * ratio_b / static_cast<double>(b.n - 1));
    r.p_value = student_t_two_sided_p(r.t, r.df);
    r.p_adjusted = r.p_value;
    r.reject = r.p_adjusted < alpha;
    return r;
}

NormalityResult normality_screen(const AmountGroup& group, const NormalityParams& params,
                                 std::uint64_t seed) {
    NormalityResult result;
    result.critical = -2.0 * std::log(params.alpha);  // chi-square(2) closed form
    if (group.n < static_cast<std::size_t>(params.sample_size)) {
        throw GroupTooSmallError("normality_screen: group '" + group.key + "' has " +
                                 std::to_string(group.n) + " samples, needs at least " +
                                 std::to_string(params.sample_size));
    }
    if (group.sd == 0.0) {
        result.reason = "zero variance";
        return result;
    }

    util::Rng rng(seed);
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(params.resamples));
    for (int r = 0; r < params.resamples; ++r) {
        const auto idx = rng.sample_indices(group.n, static_cast<std::size_t>(params.sample_size));
        double sum = 0.0;
        for (std::size_t i : idx) sum += group.amounts_usd[i];
        means.push_back(sum / static_cast<double>(params.sample_size));
    }

    const double count = static_cast<double>(means.size());
    double mean = 0.0;
    for (double v : means) mean += v;
    mean /= count;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : means) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= count;
    m3 /= count;
    m4 /= count;
    if (m2 == 0.0) {
        result.reason = "zero variance";
        return result;
    }
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2) - 3.0;
    result.jb_statistic = count / 6.0 * (skew * skew + kurt * kurt / 4.0);
    result.passed = result.jb_statistic <= result.critical;
    if (!result.passed) result.reason = "subsample means not normally shaped";
    return result;
}

PairwiseAnalysis pairwise_analysis(const std::vector<AmountGroup>& groups, double alpha) {
    PairwiseAnalysis analysis;
    for (const auto& g : groups) {
        analysis.summary.push_back({g.key, g.n, g.mean, g.sd, g.sem});
    }
    const std::size_t n = groups.size();
    analysis.comparisons = n < 2 ? 0 : n * (n - 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            TestResult r = welch_t_test(groups[i], groups[j], alpha);
            r.p_adjusted = std::min(1.0, r.p_value * static_cast<double>(analysis.comparisons));
            r.reject = r.p_adjusted < alpha;
            analysis.results.push_back(std::move(r));
        }
    }
    return analysis;
}

namespace {

std::size_t codepoint_length(const std::string& s) {
    std::size_t count = 0;
    for (unsigned char c : s) {
        if ((c & 0xc0) != 0x80) ++count;
    }
    return count;
}

}  // namespace

BreachMatchResult breach_match(const std::vector<std::string>& corpus_passwords,
                               const std::vector<std::string>& breach_files,
                               double sample_fraction, std::uint64_t seed) {
    if (sample_fraction < 0.0 || sample_fraction > 1.0) {
        throw ConfigError("breach sample fraction must be within [0,1]");
    }

    std::map<std::string, std::size_t> counts;
    for (const auto& pw : corpus_passwords) ++counts[pw];

    std::vector<std::string> candidates;  // sorted by map order
    for (const auto& [pw, count] : counts) {
        if (count == 1 && codepoint_length(pw) >= 4) candidates.push_back(pw);
    }

    BreachMatchResult result;
    result.candidates = candidates.size();
    const auto k = static_cast<std::size_t>(
        std::llround(sample_fraction * static_cast<double>(candidates.size())));

    util::Rng rng(seed);
    std::unordered_set<std::string> sample;
    for (std::size_t i : rng.sample_indices(candidates.size(), k)) {
        sample.insert(candidates[i]);
    }
    result.sampled = sample.size();

    std::unordered_set<std::string> matched;
    for (const auto& path : breach_files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open breach wordlist: " + path);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (first) {
                if (line.size() >= 3 && line[0] == '\xef' && line[1] == '\xbb' &&
                    line[2] == '\xbf') {
                    line.erase(0, 3);  // BOM tolerated
                }
                first = false;
            }
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && sample.count(line)) matched.insert(line);
        }
    }
    result.matched = matched.size();
    result.rate = result.sampled == 0
                      ? 0.0
                      : static_cast<double>(result.matched) / static_cast<double>(result.sampled);
    return result;
}

}  // namespace spamflow::stats
