#include "lowbmm/random.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace lowbmm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::vector<int> random_permutation(Rng& rng, int count, int first) {
  std::vector<int> out(static_cast<std::size_t>(count));
  std::iota(out.begin(), out.end(), first);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<int> sample_without_replacement(Rng& rng, int n, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  if (2 * k > n) {
    // Partial Fisher-Yates when a large fraction is requested.
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
      const int j = i + uniform_index(rng, n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }
  std::unordered_set<int> seen;
  while (static_cast<int>(out.size()) < k) {
    const int v = uniform_index(rng, n);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace lowbmm
