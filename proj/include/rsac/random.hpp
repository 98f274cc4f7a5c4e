/* Copyright (C) 2026 the rsac authors
 *
 * This program is free software: you can redistribute it and/or modify
 * it under the terms of the GNU General Public License as published by
 * the Free Software Foundation, either version 3 of the License, or
 * (at your option) any later version.
 *
 * This program is distributed in the hope that it will be useful,
 * but WITHOUT ANY WARRANTY; without even the implied warranty of
 * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
 * GNU General Public License for more details.
 */

#ifndef RSAC_RANDOM_HPP
#define RSAC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace rsac {

/// Seedable random source backing every stochastic operation.
///
/// The engine is std::mt19937_64, whose raw stream is fully specified by
/// the C++ standard, so the same seed gives a bit-identical stream on any
/// conforming implementation.  Values drawn through the std::*_distribution
/// adaptors are deterministic for a given standard library build, which is
/// the reproducibility contract documented in the README.
///
/// Replicated computations (bootstrap, simulation replicates) must not
/// share one stream; they derive independent sub-streams with substream(),
/// which mixes (seed, index) through splitmix64.  Results are therefore
/// identical no matter how replicates are scheduled.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64 &engine() { return engine_; }

  /// Deterministic sub-stream for replicate `index`.
  RandomSource substream(std::uint64_t index) const {
    return RandomSource(mix(seed_, index));
  }

private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the combined state
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rsac

#endif
