#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "liqsched/market_model.hpp"

namespace liqsched {

/// SplitMix64 finaliser (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of replication `rep` under `master`:
///   splitmix64(splitmix64(master) + rep)
/// Part of the reproducibility contract; changing it changes every pinned
/// result.
constexpr std::uint64_t replication_seed(std::uint64_t master, std::uint64_t rep) {
  return splitmix64(splitmix64(master) + rep);
}

/// Standard-normal draws from a std::mt19937_64 engine.
///
/// Uses the Box-Muller transform on 53-bit uniforms, emitting the cosine
/// branch then the sine branch, so the stream depends only on the engine's
/// (standard-specified) output and not on the library's
/// std::normal_distribution.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next();

  /// Fills `noise` (M vectors of length n) step by step, asset by asset.
  void fill(std::vector<Vector>& noise, std::size_t steps, std::size_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace liqsched
