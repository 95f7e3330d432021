#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spamflow/corpus/email.hpp"

namespace spamflow::corpus {

struct BucketingParams {
    int l = 50;      // trailing words compared
    double t = 0.3;  // merge threshold, strict '>'
};

// Trailing-word suffix of an email body. Emails shorter than l words use
// their full token list.
struct TokenSuffix {
    std::vector<std::string> tokens;  // ordered, length <= l
    int l = 0;
};

TokenSuffix suffix_of(const std::vector<std::string>& tokens, int l);

struct Bucket {
    int id = 0;
    std::string template_email_id;
    std::vector<std::string> member_ids;  // insertion order, template included
    TokenSuffix suffix;                   // template's suffix
};

// Two-step grouping:
//   step 1: exact match on the last-l-word suffix against each existing
//           bucket's template suffix; no match creates a new bucket whose
//           template is the incoming email.
//   step 2: pairwise Jaccard over template suffixes as sets; buckets with
//           similarity > t are merged transitively. The merged bucket keeps
//           the id, template and suffix of its largest constituent
//           (ties: lowest id); members concatenate in constituent-id order.
// The result is a partition of the corpus, sorted by bucket id.
std::vector<Bucket> bucket_emails(const std::vector<Email>& corpus, const BucketingParams& params);

struct QualityStats {
    double mean = 1.0;
    double variance = 0.0;
    std::size_t pairs = 0;
    std::size_t sampled_members = 0;
};

// Mean/variance of pairwise Jaccard over member suffix sets. Exact when the
// bucket has at most sample_size members, otherwise computed on a seeded
// sample of that many members. Single-member buckets report mean 1, var 0.
QualityStats bucket_quality(const std::vector<std::vector<std::string>>& member_suffix_sets,
                            std::size_t sample_size, std::uint64_t seed);

}  // namespace spamflow::corpus
