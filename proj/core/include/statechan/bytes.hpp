#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace statechan {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(const Bytes& b);
std::optional<Bytes> from_hex(std::string_view hex);

/// XOR of two equal-length strings; the shorter one is zero-padded.
Bytes xor_bytes(const Bytes& a, const Bytes& b);

}  // namespace statechan
