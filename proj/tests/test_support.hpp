#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kmmix/chain.hpp"

namespace kmmix::testing {

inline ChainParams reference_chain() { return ChainParams::make(1.0 / 11, 9.0 / 11, 1.0 / 11); }

// Valid triples spanning small/large holding probability and drift.
inline std::vector<ChainParams> parameter_grid() {
  std::vector<ChainParams> grid{reference_chain()};
  for (double r : {0.05, 0.2, 0.4, 0.6}) {
    for (double ratio : {0.1, 0.3, 0.5, 0.7, 0.85}) {
      // p/q = ratio with p + q = 1 - r
      const double p = (1.0 - r) * ratio / (1.0 + ratio);
      grid.push_back(ChainParams::make(p, 1.0 - r - p, r));
    }
  }
  return grid;
}

// Random valid triples: r in [0.05, 0.6], p/q in [0.1, 0.9].
inline std::vector<ChainParams> random_triples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> r_dist(0.05, 0.6);
  std::uniform_real_distribution<double> ratio_dist(0.1, 0.9);
  std::vector<ChainParams> out;
  for (std::size_t k = 0; k < count; ++k) {
    const double r = r_dist(gen);
    const double ratio = ratio_dist(gen);
    const double p = (1.0 - r) * ratio / (1.0 + ratio);
    out.push_back(ChainParams::make(p, 1.0 - r - p, r));
  }
  return out;
}

}  // namespace kmmix::testing
