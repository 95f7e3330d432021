#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spamflow::util {

bool is_base58_char(char c);

// Raw base58 (no checksum).
std::string base58_encode(std::span<const std::uint8_t> bytes);
std::optional<std::vector<std::uint8_t>> base58_decode(std::string_view s);

// Base58Check: payload || first-4-bytes(double_sha256(payload)).
// `payload` already includes the version byte.
std::string base58check_encode(std::span<const std::uint8_t> payload);

// Decodes and verifies the 4-byte checksum; returns the payload on success.
std::optional<std::vector<std::uint8_t>> base58check_decode(std::string_view s);

// Validation rule for legacy addresses: decodes to exactly 25 bytes
// (version + 20-byte hash + checksum) with a valid double-SHA256 checksum.
bool base58check_address_valid(std::string_view s);

// 25-byte-payload convenience used by the fixture generator:
// version byte + 20 payload bytes -> address string.
std::string encode_p2pkh_like(std::uint8_t version, std::span<const std::uint8_t> hash20);

}  // namespace spamflow::util
