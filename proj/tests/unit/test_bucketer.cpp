#include <doctest.h>

#include <map>
#include <set>

#include "spamflow/corpus/bucketer.hpp"
#include "spamflow/corpus/tokenize.hpp"
#include "spamflow/util/rng.hpp"

using namespace spamflow;

namespace {

corpus::Email make_email(std::string id, std::string body) {
    corpus::Email e;
    e.id = std::move(id);
    e.body = std::move(body);
    e.date_valid = true;
    return e;
}

// independent re-implementation of both bucketing steps: exact-suffix map,
// then pairwise merging repeated to a fixpoint
std::set<std::set<std::string>> oracle_partition(const std::vector<corpus::Email>& emails, int l,
                                                 double t) {
    std::vector<std::vector<std::string>> suffixes;  // template suffix per bucket
    std::vector<std::set<std::string>> members;
    for (const auto& e : emails) {
        auto tokens = corpus::normalize_and_tokenize(e.body);
        if (static_cast<int>(tokens.size()) > l) {
            tokens.erase(tokens.begin(), tokens.end() - l);
        }
        bool placed = false;
        for (std::size_t b = 0; b < suffixes.size(); ++b) {
            if (suffixes[b] == tokens) {
                members[b].insert(e.id);
                placed = true;
                break;
            }
        }
        if (!placed) {
            suffixes.push_back(tokens);
            members.push_back({e.id});
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < suffixes.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < suffixes.size() && !changed; ++j) {
                if (corpus::jaccard(corpus::token_set(suffixes[i]),
                                    corpus::token_set(suffixes[j])) > t) {
                    members[i].insert(members[j].begin(), members[j].end());
                    members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
                    suffixes.erase(suffixes.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
    }
    return {members.begin(), members.end()};
}

std::set<std::set<std::string>> as_partition(const std::vector<corpus::Bucket>& buckets) {
    std::set<std::set<std::string>> out;
    for (const auto& b : buckets) {
        out.insert(std::set<std::string>(b.member_ids.begin(), b.member_ids.end()));
    }
    return out;
}

}  // namespace

TEST_CASE("two identical emails land in one bucket") {
    const std::vector<corpus::Email> emails = {make_email("a", "pay me now or else"),
                                               make_email("b", "pay me now or else")};
    const auto buckets = corpus::bucket_emails(emails, {});
    REQUIRE(buckets.size() == 1);
    CHECK(buckets[0].member_ids == std::vector<std::string>{"a", "b"});
    CHECK(buckets[0].template_email_id == "a");
}

TEST_CASE("similarity chain merges transitively") {
    // J(A,B) = J(B,C) = 0.5 > t, J(A,C) = 0.2 < t: still one bucket
    const std::vector<corpus::Email> emails = {make_email("A", "alpha beta gamma"),
                                               make_email("B", "beta gamma delta"),
                                               make_email("C", "gamma delta epsilon")};
    const corpus::BucketingParams params{50, 0.3};
    const auto buckets = corpus::bucket_emails(emails, params);
    REQUIRE(buckets.size() == 1);
    CHECK(buckets[0].member_ids.size() == 3);
    CHECK(as_partition(buckets) == oracle_partition(emails, params.l, params.t));
}

TEST_CASE("merged bucket keeps the largest constituent's template") {
    std::vector<corpus::Email> emails;
    // bucket 0: one email; bucket 1: two emails with a near-identical suffix
    emails.push_back(make_email("solo", "one two three four"));
    emails.push_back(make_email("big1", "zero two three four"));
    emails.push_back(make_email("big2", "zero two three four"));
    const auto buckets = corpus::bucket_emails(emails, {50, 0.3});
    REQUIRE(buckets.size() == 1);
    CHECK(buckets[0].template_email_id == "big1");  // larger constituent
    CHECK(buckets[0].id == 1);
}

TEST_CASE("emails shorter than l use their full token list") {
    const std::vector<corpus::Email> emails = {make_email("x", "tiny body")};
    const auto buckets = corpus::bucket_emails(emails, {50, 0.3});
    REQUIRE(buckets.size() == 1);
    CHECK(buckets[0].suffix.tokens == std::vector<std::string>{"tiny", "body"});
}

TEST_CASE("bucketing partitions random corpora and matches the oracle") {
    util::Rng rng(31);
    for (int round = 0; round < 10; ++round) {
        std::vector<corpus::Email> emails;
        const int n = 30 + static_cast<int>(rng.below(40));
        for (int i = 0; i < n; ++i) {
            // small vocabulary so suffix collisions and merges actually happen
            std::string body;
            const int words = 3 + static_cast<int>(rng.below(4));
            for (int w = 0; w < words; ++w) {
                body += "tok" + std::to_string(rng.below(8)) + " ";
            }
            emails.push_back(make_email("e" + std::to_string(i), body));
        }
        const corpus::BucketingParams params{4, 0.3};
        const auto buckets = corpus::bucket_emails(emails, params);

        std::size_t total = 0;
        std::set<std::string> seen;
        for (const auto& b : buckets) {
            total += b.member_ids.size();
            for (const auto& id : b.member_ids) CHECK(seen.insert(id).second);
            CHECK(std::find(b.member_ids.begin(), b.member_ids.end(), b.template_email_id) !=
                  b.member_ids.end());
        }
        CHECK(total == emails.size());
        CHECK(as_partition(buckets) == oracle_partition(emails, params.l, params.t));

        // step-1 determinism: identical stream, identical result
        const auto again = corpus::bucket_emails(emails, params);
        CHECK(as_partition(again) == as_partition(buckets));
    }
}

TEST_CASE("bucket quality statistics") {
    // identical suffixes
    std::vector<std::vector<std::string>> same(5, corpus::token_set({"a", "b", "c"}));
    auto q = corpus::bucket_quality(same, 100, 1);
    CHECK(q.mean == 1.0);
    CHECK(q.variance == 0.0);

    // two members {a,b} vs {b,c}: single pair at 1/3
    std::vector<std::vector<std::string>> two = {corpus::token_set({"a", "b"}),
                                                 corpus::token_set({"b", "c"})};
    q = corpus::bucket_quality(two, 100, 1);
    CHECK(q.mean == doctest::Approx(1.0 / 3.0));
    CHECK(q.variance == doctest::Approx(0.0));
    CHECK(q.pairs == 1);

    // sampling is deterministic under a seed and exact when small enough
    std::vector<std::vector<std::string>> many;
    for (int i = 0; i < 60; ++i) {
        many.push_back(corpus::token_set({"w" + std::to_string(i % 7), "common"}));
    }
    const auto a = corpus::bucket_quality(many, 20, 42);
    const auto b = corpus::bucket_quality(many, 20, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.sampled_members == 20);
    const auto exact = corpus::bucket_quality(many, 60, 42);
    CHECK(exact.pairs == 60 * 59 / 2);
}
