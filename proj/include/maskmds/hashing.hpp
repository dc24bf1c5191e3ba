#pragma once

#include <cstdint>
#include <string_view>

namespace maskmds {

// Pinned, platform-independent hashing. std::hash is implementation-defined,
// so seeded per-cluster decisions (random mask choice) go through these.

inline constexpr std::uint64_t kFnvOffsetBasis = 1469598103934665603ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = kFnvOffsetBasis) {
    for (unsigned char c : bytes) {
        state ^= static_cast<std::uint64_t>(c);
        state *= kFnvPrime;
    }
    return state;
}

/// splitmix64 finalizer; bijective mixing of a 64-bit state.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic 64-bit value derived from (seed, key), independent of
/// processing order and thread schedule.
inline std::uint64_t seeded_hash(std::uint64_t seed, std::string_view key) {
    char seed_bytes[8];
    for (int i = 0; i < 8; ++i) {
        seed_bytes[i] = static_cast<char>((seed >> (8 * i)) & 0xff);
    }
    std::uint64_t h = fnv1a64(std::string_view(seed_bytes, 8));
    h = fnv1a64(key, h);
    return splitmix64(h);
}

}  // namespace maskmds
