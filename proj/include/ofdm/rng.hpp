// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ofdm/types.hpp"

namespace ofdm {

// Deterministic substream generator: mt19937_64 seeded through splitmix64 of
// (seed, stream tag), with the variate transforms written out here so the
// produced sequences do not depend on the standard library's distribution
// implementations.
class SubstreamRng {
 public:
  SubstreamRng(uint64_t seed, uint64_t stream) : eng_(mix(seed ^ mix(stream))) {}

  uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, n), bias-free (rejection on the top range).
  Index next_index(Index n) {
    const uint64_t bound = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<Index>(x % bound);
  }

  /// Circularly symmetric complex normal with E|z|^2 = 1 (Box-Muller).
  Complex next_complex_normal() {
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-std::log1p(-u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return std::polar(r, phi);
  }

 private:
  static uint64_t mix(uint64_t x) {  // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace ofdm
