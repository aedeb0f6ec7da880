#pragma once

#include <cstdint>
#include <random>

namespace mono {

// Reproducible stream identifier: the same (master, stream) pair always
// yields the same engine state, and distinct pairs yield unrelated streams.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  Seed child(std::uint64_t sub) const;

  friend bool operator==(const Seed&, const Seed&) = default;
};

using Engine = std::mt19937_64;

// SplitMix64 finaliser; used to decorrelate (master, stream) pairs.
std::uint64_t mix64(std::uint64_t x);

Engine make_engine(const Seed& seed);

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace mono
