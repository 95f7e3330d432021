#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spamflow::corpus {

// Tokenizer rule table
// --------------------
// 1. The input is decoded as UTF-8; an invalid byte is treated as a
//    single Latin-1 code point rather than aborting.
// 2. Words are split on whitespace: ASCII space/tab/newline family plus
//    NEL, NBSP, OGHAM SPACE, U+2000..U+200A, LINE/PARAGRAPH SEPARATOR,
//    NARROW NBSP, MMSP and IDEOGRAPHIC SPACE.
// 3. Punctuation is stripped from both edges of each word, repeatedly:
//    ASCII . , ; : ! ? ' " ( ) [ ] { } < > / \ | - _ * & # % @ ^ ~ ` +
//    and the common typographic marks (curly quotes, guillemets, en/em
//    dash, ellipsis, bullets, inverted ! and ?, CJK fullwidth stops).
//    Currency signs are NOT stripped.
// 4. Remaining characters are lowercased: ASCII, Latin-1, Latin
//    Extended-A, Greek and Cyrillic letters. Other scripts pass through.
// 5. Words that become empty are dropped; order is preserved.
std::vector<std::string> normalize_and_tokenize(std::string_view text);

// Sorted, de-duplicated view of a token list (set form used by Jaccard).
std::vector<std::string> token_set(const std::vector<std::string>& tokens);

// |a ∩ b| / |a ∪ b| over sorted unique token vectors.
// Two empty sets are defined as identical (1.0).
double jaccard(const std::vector<std::string>& sorted_a, const std::vector<std::string>& sorted_b);

}  // namespace spamflow::corpus
