#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lowbmm {

using Rng = std::mt19937_64;

// Derives an independent seed for sub-stream `stream` of `master`. Chains,
// benchmark repetitions and grid points each get their own stream, so
// results do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

// Uniform integer in [0, bound). bound must be positive.
inline int uniform_index(Rng& rng, int bound) {
  return std::uniform_int_distribution<int>(0, bound - 1)(rng);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Uniform random permutation of {first, ..., first + count - 1}.
std::vector<int> random_permutation(Rng& rng, int count, int first = 1);

// `k` distinct values drawn uniformly from [0, n), in draw order.
std::vector<int> sample_without_replacement(Rng& rng, int n, int k);

}  // namespace lowbmm
