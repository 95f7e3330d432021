#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spamflow::stats {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of a t statistic under Student's t with `df` degrees of
// freedom: I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

struct AmountGroup {
    std::string key;  // language or campaign label
    std::vector<double> amounts_usd;
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;   // sample standard deviation (Bessel)
    double sem = 0.0;  // sd / sqrt(n)

    static AmountGroup make(std::string key, std::vector<double> amounts);
};

struct TestResult {
    std::string group_a;
    std::string group_b;
    double t = 0.0;
    double df = 0.0;         // Welch-Satterthwaite, real-valued
    double p_value = 1.0;
    double p_adjusted = 1.0; // Bonferroni: min(1, p * comparisons)
    bool reject = false;
};

// Welch's unequal-variance t-test. Throws DegenerateVarianceError when both
// groups have zero variance. Standalone calls use a Bonferroni factor of 1.
TestResult welch_t_test(const AmountGroup& a, const AmountGroup& b, double alpha = 0.05);

struct NormalityParams {
    int resamples = 100;    // R
    int sample_size = 30;   // n per subsample
    double alpha = 0.05;
};

struct NormalityResult {
    bool passed = false;
    std::string reason;  // set when failed
    double jb_statistic = 0.0;
    double critical = 0.0;  // chi-square(2) upper quantile at alpha
};

// Draws R seeded subsamples of size n (without replacement), takes each
// subsample mean, and runs a Jarque-Bera skewness/kurtosis test on those
// means. Groups smaller than n raise GroupTooSmallError; zero-variance
// groups fail with a reason instead of a statistic.
NormalityResult normality_screen(const AmountGroup& group, const NormalityParams& params,
                                 std::uint64_t seed);

struct GroupSummaryRow {
    std::string key;
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double sem = 0.0;
};

struct PairwiseAnalysis {
    std::vector<TestResult> results;  // all unordered pairs, input order
    std::size_t comparisons = 0;      // Bonferroni factor
    std::vector<GroupSummaryRow> summary;
};

// All-pairs Welch tests with Bonferroni adjustment across the pair count.
// Callers screen groups for normality first.
PairwiseAnalysis pairwise_analysis(const std::vector<AmountGroup>& groups, double alpha = 0.05);

struct BreachMatchResult {
    std::size_t candidates = 0;  // unique, seen once, >= 4 characters
    std::size_t sampled = 0;
    std::size_t matched = 0;
    double rate = 0.0;
};

// Matches corpus passwords against newline-delimited breach wordlists.
// Candidates are passwords seen exactly once in the corpus with at least
// four characters (code points); a seeded random fraction of them is tested
// by streaming exact-match lookup over the union of the lists.
BreachMatchResult breach_match(const std::vector<std::string>& corpus_passwords,
                               const std::vector<std::string>& breach_files,
                               double sample_fraction, std::uint64_t seed);

}  // namespace spamflow::stats
