#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace beliefnav {

// FNV-1a over raw bytes; used for checkpoint checksums and manifest hashes.
inline std::uint64_t fnv1a64(std::span<const std::byte> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(std::as_bytes(std::span(s.data(), s.size())));
}

std::string to_hex(std::uint64_t value);

}  // namespace beliefnav
