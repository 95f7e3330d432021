#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace spamflow::util {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::span<const std::uint8_t> data);
Sha256Digest sha256(std::string_view data);

// sha256(sha256(data)) — the Base58Check checksum primitive.
Sha256Digest double_sha256(std::span<const std::uint8_t> data);

std::string hex(std::span<const std::uint8_t> bytes);

}  // namespace spamflow::util
