#include "spamflow/corpus/bucketer.hpp"

#include <algorithm>
#include <unordered_map>

#include "spamflow/corpus/tokenize.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/rng.hpp"
#include "spamflow/util/union_find.hpp"

namespace spamflow::corpus {

TokenSuffix suffix_of(const std::vector<std::string>& tokens, int l) {
    TokenSuffix s;
    s.l = l;
    const std::size_t take = std::min(tokens.size(), static_cast<std::size_t>(l));
    s.tokens.assign(tokens.end() - static_cast<std::ptrdiff_t>(take), tokens.end());
    return s;
}

namespace {

std::string suffix_key(const TokenSuffix& s) {
    std::string key;
    for (const auto& tok : s.tokens) {
        key += tok;
        key.push_back('\x1f');
    }
    return key;
}

}  // namespace

std::vector<Bucket> bucket_emails(const std::vector<Email>& corpus, const BucketingParams& params) {
    if (params.l < 1) throw ConfigError("bucketing parameter l must be >= 1");
    if (!(params.t > 0.0 && params.t < 1.0)) throw ConfigError("bucketing threshold t must be in (0,1)");

    // step 1: exact suffix match in stream order
    std::vector<Bucket> buckets;
    std::unordered_map<std::string, std::size_t> by_suffix;
    for (const Email& email : corpus) {
        TokenSuffix suffix = suffix_of(normalize_and_tokenize(email.body), params.l);
        const std::string key = suffix_key(suffix);
        auto it = by_suffix.find(key);
        if (it != by_suffix.end()) {
            buckets[it->second].member_ids.push_back(email.id);
            continue;
        }
        Bucket b;
        b.id = static_cast<int>(buckets.size());
        b.template_email_id = email.id;
        b.member_ids.push_back(email.id);
        b.suffix = std::move(suffix);
        by_suffix.emplace(key, buckets.size());
        buckets.push_back(std::move(b));
    }

    // step 2: transitive merge of buckets whose template suffixes are similar
    const std::size_t n = buckets.size();
    std::vector<std::vector<std::string>> sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        sets[i] = token_set(buckets[i].suffix.tokens);
    }
    util::UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (jaccard(sets[i], sets[j]) > params.t) {
                uf.unite(i, j);
            }
        }
    }

    std::unordered_map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        groups[uf.find(i)].push_back(i);  // ascending bucket id per group
    }

    std::vector<Bucket> merged;
    merged.reserve(groups.size());
    for (auto& [root, ids] : groups) {
        // representative: largest member count, ties to the lowest id
        std::size_t rep = ids.front();
        for (std::size_t idx : ids) {
            if (buckets[idx].member_ids.size() > buckets[rep].member_ids.size()) rep = idx;
        }
        Bucket out;
        out.id = buckets[rep].id;
        out.template_email_id = buckets[rep].template_email_id;
        out.suffix = std::move(buckets[rep].suffix);
        for (std::size_t idx : ids) {
            out.member_ids.insert(out.member_ids.end(), buckets[idx].member_ids.begin(),
                                  buckets[idx].member_ids.end());
        }
        merged.push_back(std::move(out));
    }
    std::sort(merged.begin(), merged.end(),
              [](const Bucket& a, const Bucket& b) { return a.id < b.id; });
    return merged;
}

QualityStats bucket_quality(const std::vector<std::vector<std::string>>& member_suffix_sets,
                            std::size_t sample_size, std::uint64_t seed) {
    QualityStats stats;
    const std::size_t n = member_suffix_sets.size();
    if (n == 0) throw DataError("bucket_quality: empty bucket");

    std::vector<std::size_t> chosen;
    if (n <= sample_size) {
        chosen.resize(n);
        for (std::size_t i = 0; i < n; ++i) chosen[i] = i;
    } else {
        util::Rng rng(seed);
        chosen = rng.sample_indices(n, sample_size);
        std::sort(chosen.begin(), chosen.end());
    }
    stats.sampled_members = chosen.size();

    if (chosen.size() < 2) {
        // a lone email is trivially similar to itself
        return stats;
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        for (std::size_t j = i + 1; j < chosen.size(); ++j) {
            const double v = jaccard(member_suffix_sets[chosen[i]], member_suffix_sets[chosen[j]]);
            sum += v;
            sum_sq += v * v;
            ++pairs;
        }
    }
    stats.pairs = pairs;
    stats.mean = sum / static_cast<double>(pairs);
    stats.variance = sum_sq / static_cast<double>(pairs) - stats.mean * stats.mean;
    if (stats.variance < 0.0) stats.variance = 0.0;  // fp guard
    return stats;
}

}  // namespace spamflow::corpus
