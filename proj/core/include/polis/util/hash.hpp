#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace polis::util {

/// Hex-encoded SHA-256 digest. Used for cache keys, config hashes, and
/// run-manifest input fingerprints.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's contents; throws MissingArtifactError if unreadable.
std::string sha256_file(const std::string& path);

/// First 8 bytes of sha256(tag) folded into a uint64, for deriving
/// per-module RNG substreams from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

} // namespace polis::util
