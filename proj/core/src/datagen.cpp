#include "lowbmm/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "lowbmm/error.hpp"
#include "lowbmm/random.hpp"

namespace lowbmm {

RankingDataset::RankingDataset(std::vector<std::string> item_ids, std::vector<int> ranks_row_major)
    : item_ids_(std::move(item_ids)), ranks_(std::move(ranks_row_major)) {
  const auto n = item_ids_.size();
  if (n == 0) throw DataError("dataset has no items");
  if (ranks_.size() % n != 0) {
    throw DimensionError("dataset size " + std::to_string(ranks_.size()) +
                         " is not a multiple of the item count " + std::to_string(n));
  }
  assessors_ = static_cast<int>(ranks_.size() / n);
  if (assessors_ < 1) throw DataError("dataset has no assessors");
  for (int j = 0; j < assessors_; ++j) {
    if (!is_permutation(row(j))) {
      throw DataError("row " + std::to_string(j + 1) + " is not a permutation of 1.." +
                      std::to_string(n));
    }
  }
}

RankingDataset::RankingDataset(std::vector<std::string> item_ids, const std::vector<Ranking>& rows)
    : RankingDataset(std::move(item_ids), [&] {
        std::vector<int> flat;
        for (const auto& r : rows) flat.insert(flat.end(), r.values().begin(), r.values().end());
        return flat;
      }()) {
  for (const auto& r : rows) {
    if (r.size() != items()) throw DimensionError("dataset row length differs from item count");
  }
}

std::vector<std::string> RankingDataset::default_item_ids(int n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) ids.push_back("item_" + std::to_string(i));
  return ids;
}

Ranking RankingDataset::ranking(int assessor) const {
  const auto r = row(assessor);
  return Ranking(std::vector<int>(r.begin(), r.end()));
}

int GroundTruth::item_with_rank(int r) const {
  for (int k = 0; k < consensus.size(); ++k) {
    if (consensus[k] == r) return true_set[k];
  }
  throw IndexError("no relevant item has true rank " + std::to_string(r));
}

const char* to_string(Generator g) {
  return g == Generator::kTopRank ? "top-rank" : "rank-consistency";
}

Generator parse_generator(const std::string& name) {
  if (name == "top-rank" || name == "top_rank") return Generator::kTopRank;
  if (name == "rank-consistency" || name == "rank_consistency") return Generator::kRankConsistency;
  throw ConfigError("unknown generator '" + name + "' (expected top-rank or rank-consistency)");
}

namespace {

void check_shape(int n, int n_star, int assessors, double alpha) {
  if (n_star < 1 || n_star >= n) {
    throw ConfigError("generator requires 1 <= n_star < n (got n=" + std::to_string(n) +
                      ", n_star=" + std::to_string(n_star) + ")");
  }
  if (assessors < 1) throw ConfigError("generator requires at least one assessor");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
}

// Relevant items in a random labelling, listed in true-rank order.
GroundTruth draw_truth(int n, int n_star, Rng& rng) {
  std::vector<int> relevant = sample_without_replacement(rng, n, n_star);
  return GroundTruth{ItemSet(std::move(relevant), n), Ranking::identity(n_star)};
}

std::string provenance(Generator g, int n, int n_star, int assessors, double alpha,
                       std::uint64_t seed) {
  return std::string(to_string(g)) + " n=" + std::to_string(n) +
         " n_star=" + std::to_string(n_star) + " N=" + std::to_string(assessors) +
         " alpha=" + std::to_string(alpha) + " seed=" + std::to_string(seed);
}

}  // namespace

SimulatedData gen_top_rank(int n, int n_star, int assessors, double alpha, std::uint64_t seed,
                           const MallowsChainOptions& chain) {
  check_shape(n, n_star, assessors, alpha);
  Rng rng = make_rng(seed, 1);
  GroundTruth truth = draw_truth(n, n_star, rng);
  const std::vector<int> others = truth.true_set.complement();
  const auto draws =
      sample_mallows(MallowsParams{Ranking::identity(n_star), alpha}, assessors,
                     derive_seed(seed, 0), chain);

  std::vector<int> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(assessors));
  for (int j = 0; j < assessors; ++j) {
    int* row = flat.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n);
    for (int k = 0; k < n_star; ++k) row[truth.true_set[k]] = draws[static_cast<std::size_t>(j)][k];
    const std::vector<int> tail = random_permutation(rng, n - n_star, n_star + 1);
    for (std::size_t k = 0; k < others.size(); ++k) row[others[k]] = tail[k];
  }
  RankingDataset data(RankingDataset::default_item_ids(n), std::move(flat));
  data.provenance = provenance(Generator::kTopRank, n, n_star, assessors, alpha, seed);
  return {std::move(data), std::move(truth)};
}

SimulatedData gen_rank_consistency(int n, int n_star, int assessors, double alpha,
                                   std::uint64_t seed, const MallowsChainOptions& chain) {
  check_shape(n, n_star, assessors, alpha);
  Rng rng = make_rng(seed, 1);
  GroundTruth truth = draw_truth(n, n_star, rng);
  const std::vector<int> others = truth.true_set.complement();
  const auto draws =
      sample_mallows(MallowsParams{Ranking::identity(n_star), alpha}, assessors,
                     derive_seed(seed, 0), chain);

  std::vector<int> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(assessors));
  std::vector<char> taken(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < assessors; ++j) {
    int* row = flat.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n);
    std::vector<int> positions = sample_without_replacement(rng, n, n_star);
    for (auto& p : positions) ++p;
    std::sort(positions.begin(), positions.end());
    std::fill(taken.begin(), taken.end(), 0);
    const Ranking& sigma = draws[static_cast<std::size_t>(j)];
    for (int k = 0; k < n_star; ++k) {
      const int pos = positions[static_cast<std::size_t>(sigma[k] - 1)];
      row[truth.true_set[k]] = pos;
      taken[static_cast<std::size_t>(pos)] = 1;
    }
    std::vector<int> free_positions;
    free_positions.reserve(others.size());
    for (int r = 1; r <= n; ++r) {
      if (!taken[static_cast<std::size_t>(r)]) free_positions.push_back(r);
    }
    std::shuffle(free_positions.begin(), free_positions.end(), rng);
    for (std::size_t k = 0; k < others.size(); ++k) row[others[k]] = free_positions[k];
  }
  RankingDataset data(RankingDataset::default_item_ids(n), std::move(flat));
  data.provenance = provenance(Generator::kRankConsistency, n, n_star, assessors, alpha, seed);
  return {std::move(data), std::move(truth)};
}

SimulatedData generate(Generator g, int n, int n_star, int assessors, double alpha,
                       std::uint64_t seed, const MallowsChainOptions& chain) {
  return g == Generator::kTopRank ? gen_top_rank(n, n_star, assessors, alpha, seed, chain)
                                  : gen_rank_consistency(n, n_star, assessors, alpha, seed, chain);
}

RankingDataset apply_noise_swaps(const RankingDataset& ds, const GroundTruth& truth, int levels,
                                 double fraction, std::uint64_t seed) {
  const int n_star = truth.n_star();
  if (levels < 0 || levels > n_star) {
    throw ConfigError("noise levels must lie in 0.." + std::to_string(n_star));
  }
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("noise fraction must lie in [0, 1]");
  if (truth.true_set.universe() != ds.items()) {
    throw DimensionError("ground truth universe does not match dataset item count");
  }
  const std::vector<int> outside = truth.true_set.complement();
  if (levels > 0 && outside.empty()) throw ConfigError("no items outside the relevant set");

  std::vector<int> flat = ds.raw();
  const int n = ds.items();
  const int assessors = ds.assessors();
  const int chosen = static_cast<int>(std::lround(fraction * assessors));
  Rng rng(seed);
  for (int level = 1; level <= levels; ++level) {
    const int item = truth.item_with_rank(n_star - level + 1);
    for (int j : sample_without_replacement(rng, assessors, chosen)) {
      const int partner = outside[static_cast<std::size_t>(
          uniform_index(rng, static_cast<int>(outside.size())))];
      int* row = flat.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n);
      std::swap(row[item], row[partner]);
    }
  }
  RankingDataset out(ds.item_ids(), std::move(flat));
  out.provenance = ds.provenance + " noise_levels=" + std::to_string(levels);
  return out;
}

}  // namespace lowbmm
