//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_RANDOM_H_
#define RSMILES_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rsmiles {

// The standard distributions are implementation-defined; these helpers are
// not, so seeded outputs are identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection sampling. n must be > 0.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - Rng::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class T>
void shuffle(std::span<T> items, Rng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace rsmiles

#endif  // RSMILES_RANDOM_H_
