#include "spamflow/util/base58.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "spamflow/util/errors.hpp"
#include "spamflow/util/sha256.hpp"

namespace spamflow::util {

namespace {

constexpr char alphabet[] = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

constexpr std::array<std::int8_t, 256> build_rev_table() {
    std::array<std::int8_t, 256> t{};
    for (auto& v : t) v = -1;
    for (int i = 0; i < 58; ++i) {
        t[static_cast<unsigned char>(alphabet[i])] = static_cast<std::int8_t>(i);
    }
    return t;
}

constexpr auto rev = build_rev_table();

}  // namespace

bool is_base58_char(char c) { return rev[static_cast<unsigned char>(c)] >= 0; }

std::string base58_encode(std::span<const std::uint8_t> bytes) {
    std::size_t zeros = 0;
    while (zeros < bytes.size() && bytes[zeros] == 0) ++zeros;

    // big-endian base-256 -> base-58 by repeated division
    std::vector<std::uint8_t> num(bytes.begin() + zeros, bytes.end());
    std::string digits;
    while (!num.empty()) {
        std::uint32_t rem = 0;
        std::vector<std::uint8_t> quot;
        quot.reserve(num.size());
        for (std::uint8_t byte : num) {
            const std::uint32_t acc = (rem << 8) | byte;
            const std::uint8_t q = static_cast<std::uint8_t>(acc / 58);
            rem = acc % 58;
            if (!quot.empty() || q != 0) quot.push_back(q);
        }
        digits.push_back(alphabet[rem]);
        num = std::move(quot);
    }

    std::string out(zeros, '1');
    out.append(digits.rbegin(), digits.rend());
    return out;
}

std::optional<std::vector<std::uint8_t>> base58_decode(std::string_view s) {
    std::size_t ones = 0;
    while (ones < s.size() && s[ones] == '1') ++ones;

    std::vector<std::uint8_t> num;  // big-endian base-256 accumulator
    for (std::size_t i = ones; i < s.size(); ++i) {
        const std::int8_t digit = rev[static_cast<unsigned char>(s[i])];
        if (digit < 0) return std::nullopt;
        std::uint32_t carry = static_cast<std::uint32_t>(digit);
        for (auto it = num.rbegin(); it != num.rend(); ++it) {
            const std::uint32_t acc = static_cast<std::uint32_t>(*it) * 58 + carry;
            *it = static_cast<std::uint8_t>(acc & 0xff);
            carry = acc >> 8;
        }
        while (carry) {
            num.insert(num.begin(), static_cast<std::uint8_t>(carry & 0xff));
            carry >>= 8;
        }
    }

    std::vector<std::uint8_t> out(ones, 0);
    out.insert(out.end(), num.begin(), num.end());
    return out;
}

std::string base58check_encode(std::span<const std::uint8_t> payload) {
    std::vector<std::uint8_t> buf(payload.begin(), payload.end());
    const Sha256Digest checksum = double_sha256(payload);
    buf.insert(buf.end(), checksum.begin(), checksum.begin() + 4);
    return base58_encode(buf);
}

std::optional<std::vector<std::uint8_t>> base58check_decode(std::string_view s) {
    auto bytes = base58_decode(s);
    if (!bytes || bytes->size() < 5) return std::nullopt;
    const std::size_t payload_len = bytes->size() - 4;
    const Sha256Digest checksum =
        double_sha256(std::span<const std::uint8_t>(bytes->data(), payload_len));
    if (!std::equal(checksum.begin(), checksum.begin() + 4, bytes->begin() + payload_len)) {
        return std::nullopt;
    }
    bytes->resize(payload_len);
    return bytes;
}

bool base58check_address_valid(std::string_view s) {
    for (char c : s) {
        if (!is_base58_char(c)) return false;
    }
    auto payload = base58check_decode(s);
    return payload && payload->size() == 21;
}

std::string encode_p2pkh_like(std::uint8_t version, std::span<const std::uint8_t> hash20) {
    if (hash20.size() != 20) throw InternalError("address payload must be 20 bytes");
    std::vector<std::uint8_t> payload;
    payload.reserve(21);
    payload.push_back(version);
    payload.insert(payload.end(), hash20.begin(), hash20.end());
    return base58check_encode(payload);
}

}  // namespace spamflow::util
