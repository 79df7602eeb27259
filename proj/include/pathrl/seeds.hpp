#pragma once

#include <cstdint>
#include <random>

namespace pathrl {

// Named sub-streams so every consumer of randomness draws from its own
// deterministic seed, derived from (run seed, stream, index). Keeping the
// streams disjoint is what makes per-episode replay and resume exact.
enum class SeedStream : std::uint64_t {
  kPath = 1,         // reference-path generation, index = episode
  kPathRetry = 2,    // per-attempt sub-seed inside one generation
  kNetInit = 3,      // network parameter init
  kNoise = 4,        // exploration noise, index = episode
  kSample = 5,       // replay mini-batch sampling, index = episode
  kEvalPath = 6,     // held-out evaluation tracks, index = track
};

// splitmix64 finalizer; good avalanche for cheap seed mixing.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, SeedStream stream,
                                 std::uint64_t index) {
  std::uint64_t x = mix64(base ^ 0x6a09e667f3bcc908ull);
  x = mix64(x ^ static_cast<std::uint64_t>(stream));
  return mix64(x ^ index);
}

inline std::mt19937_64 make_rng(std::uint64_t base, SeedStream stream,
                                std::uint64_t index) {
  return std::mt19937_64(derive_seed(base, stream, index));
}

}  // namespace pathrl
