#include "spamflow/corpus/tokenize.hpp"

#include <algorithm>
#include <cstdint>

namespace spamflow::corpus {

namespace {

// Decodes one UTF-8 code point starting at `i`; advances `i`. Invalid
// sequences fall back to the single byte value.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<std::uint8_t>(s[k]); };
    const std::uint8_t b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return k < s.size() && (byte(k) & 0xc0) == 0x80;
    };
    if ((b0 & 0xe0) == 0xc0 && cont(i + 1)) {
        const std::uint32_t cp = ((b0 & 0x1fu) << 6) | (byte(i + 1) & 0x3fu);
        i += 2;
        return cp;
    }
    if ((b0 & 0xf0) == 0xe0 && cont(i + 1) && cont(i + 2)) {
        const std::uint32_t cp =
            ((b0 & 0x0fu) << 12) | ((byte(i + 1) & 0x3fu) << 6) | (byte(i + 2) & 0x3fu);
        i += 3;
        return cp;
    }
    if ((b0 & 0xf8) == 0xf0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        const std::uint32_t cp = ((b0 & 0x07u) << 18) | ((byte(i + 1) & 0x3fu) << 12) |
                                 ((byte(i + 2) & 0x3fu) << 6) | (byte(i + 3) & 0x3fu);
        i += 4;
        return cp;
    }
    ++i;
    return b0;  // Latin-1 fallback
}

void encode_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

bool is_space_cp(std::uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d: case 0x20:
        case 0x85: case 0xa0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202f: case 0x205f: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

bool is_edge_punct_cp(std::uint32_t cp) {
    if (cp < 0x80) {
        switch (static_cast<char>(cp)) {
            case '.': case ',': case ';': case ':': case '!': case '?':
            case '\'': case '"': case '(': case ')': case '[': case ']':
            case '{': case '}': case '<': case '>': case '/': case '\\':
            case '|': case '-': case '_': case '*': case '&': case '#':
            case '%': case '@': case '^': case '~': case '`': case '+':
            case '=':
                return true;
            default:
                return false;
        }
    }
    switch (cp) {
        case 0x2018: case 0x2019: case 0x201a: case 0x201c: case 0x201d:
        case 0x201e: case 0x2039: case 0x203a: case 0xab: case 0xbb:
        case 0x2013: case 0x2014: case 0x2015: case 0x2026: case 0x2022:
        case 0xa1: case 0xbf: case 0xb7: case 0x3001: case 0x3002:
        case 0xff01: case 0xff08: case 0xff09: case 0xff0c: case 0xff0e:
        case 0xff1a: case 0xff1b: case 0xff1f: case 0x300c: case 0x300d:
        case 0x300e: case 0x300f:
            return true;
        default:
            return false;
    }
}

std::uint32_t to_lower_cp(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xc0 && cp <= 0xde && cp != 0xd7) return cp + 0x20;           // Latin-1
    if (cp >= 0x100 && cp <= 0x137 && (cp & 1) == 0) return cp + 1;         // Latin Ext-A
    if (cp >= 0x139 && cp <= 0x148 && (cp & 1) == 1) return cp + 1;
    if (cp >= 0x14a && cp <= 0x177 && (cp & 1) == 0) return cp + 1;
    if (cp == 0x178) return 0xff;                                           // Ÿ
    if (cp >= 0x179 && cp <= 0x17e && (cp & 1) == 1) return cp + 1;
    if (cp >= 0x391 && cp <= 0x3a9 && cp != 0x3a2) return cp + 0x20;        // Greek
    if (cp >= 0x410 && cp <= 0x42f) return cp + 0x20;                       // Cyrillic
    if (cp >= 0x400 && cp <= 0x40f) return cp + 0x50;
    return cp;
}

}  // namespace

std::vector<std::string> normalize_and_tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::vector<std::uint32_t> word;

    auto flush = [&]() {
        if (word.empty()) return;
        std::size_t begin = 0;
        std::size_t end = word.size();
        while (begin < end && is_edge_punct_cp(word[begin])) ++begin;
        while (end > begin && is_edge_punct_cp(word[end - 1])) --end;
        if (begin < end) {
            std::string out;
            for (std::size_t i = begin; i < end; ++i) {
                encode_utf8(to_lower_cp(word[i]), out);
            }
            tokens.push_back(std::move(out));
        }
        word.clear();
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const std::uint32_t cp = decode_utf8(text, i);
        if (is_space_cp(cp)) {
            flush();
        } else {
            word.push_back(cp);
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> token_set(const std::vector<std::string>& tokens) {
    std::vector<std::string> set = tokens;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

double jaccard(const std::vector<std::string>& sorted_a, const std::vector<std::string>& sorted_b) {
    if (sorted_a.empty() && sorted_b.empty()) return 1.0;
    std::size_t inter = 0;
    std::size_t ia = 0, ib = 0;
    while (ia < sorted_a.size() && ib < sorted_b.size()) {
        const int cmp = sorted_a[ia].compare(sorted_b[ib]);
        if (cmp == 0) {
            ++inter;
            ++ia;
            ++ib;
        } else if (cmp < 0) {
            ++ia;
        } else {
            ++ib;
        }
    }
    const std::size_t uni = sorted_a.size() + sorted_b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace spamflow::corpus
