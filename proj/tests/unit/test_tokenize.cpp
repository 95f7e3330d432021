#include <doctest.h>

#include "spamflow/corpus/tokenize.hpp"
#include "spamflow/util/rng.hpp"

using namespace spamflow;

TEST_CASE("tokenizer normalizes case, whitespace and edge punctuation") {
    CHECK(corpus::normalize_and_tokenize("Hello!  As you MAY have...") ==
          std::vector<std::string>{"hello", "as", "you", "may", "have"});
    CHECK(corpus::normalize_and_tokenize("").empty());
    // interior punctuation survives, edge punctuation is stripped
    CHECK(corpus::normalize_and_tokenize("a,b c.") == std::vector<std::string>{"a,b", "c"});
    CHECK(corpus::normalize_and_tokenize("  \t\n ").empty());
    CHECK(corpus::normalize_and_tokenize("(bitcoin) [wallet]") ==
          std::vector<std::string>{"bitcoin", "wallet"});
    CHECK(corpus::normalize_and_tokenize("!!! ...") .empty());
}

TEST_CASE("tokenizer handles non-ASCII text") {
    // Latin-1, NBSP separation, typographic quotes
    CHECK(corpus::normalize_and_tokenize("Z\xc3\x81KLAD\xc2\xa0pen\xc3\xadze") ==
          std::vector<std::string>{"z\xc3\xa1klad", "pen\xc3\xadze"});
    CHECK(corpus::normalize_and_tokenize("\xe2\x80\x9cquoted\xe2\x80\x9d") ==
          std::vector<std::string>{"quoted"});
    // Cyrillic uppercase folds
    CHECK(corpus::normalize_and_tokenize("\xd0\x9f\xd0\xa0\xd0\x98\xd0\x92\xd0\x95\xd0\xa2") ==
          std::vector<std::string>{"\xd0\xbf\xd1\x80\xd0\xb8\xd0\xb2\xd0\xb5\xd1\x82"});
    // currency signs are not stripped
    CHECK(corpus::normalize_and_tokenize("send $500 now") ==
          std::vector<std::string>{"send", "$500", "now"});
}

TEST_CASE("jaccard basics") {
    using corpus::jaccard;
    using corpus::token_set;
    const auto ab = token_set({"a", "b"});
    const auto bc = token_set({"b", "c"});
    CHECK(jaccard(ab, ab) == 1.0);
    CHECK(jaccard(ab, bc) == doctest::Approx(1.0 / 3.0));
    CHECK(jaccard({}, token_set({"a"})) == 0.0);
    CHECK(jaccard({}, {}) == 1.0);  // identical emptiness
}

TEST_CASE("jaccard properties on random token sets") {
    util::Rng rng(21);
    auto random_set = [&]() {
        std::vector<std::string> words;
        const auto n = rng.below(12);
        for (std::uint64_t i = 0; i < n; ++i) {
            words.push_back("w" + std::to_string(rng.below(20)));
        }
        return corpus::token_set(words);
    };
    for (int i = 0; i < 300; ++i) {
        const auto a = random_set();
        const auto b = random_set();
        const double j_ab = corpus::jaccard(a, b);
        const double j_ba = corpus::jaccard(b, a);
        CHECK(j_ab == j_ba);          // symmetry
        CHECK(j_ab >= 0.0);
        CHECK(j_ab <= 1.0);
        CHECK(corpus::jaccard(a, a) == 1.0);
    }
}
