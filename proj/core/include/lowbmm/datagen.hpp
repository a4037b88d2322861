#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lowbmm/mallows.hpp"
#include "lowbmm/perm.hpp"

namespace lowbmm {

// N complete rankings of n items, stored row-major: rank(j, i) is the rank
// assessor j gives item i.
class RankingDataset {
 public:
  RankingDataset() = default;

  // Validates every row; throws DataError naming the first offending row
  // (1-based, as printed in files).
  RankingDataset(std::vector<std::string> item_ids, std::vector<int> ranks_row_major);
  RankingDataset(std::vector<std::string> item_ids, const std::vector<Ranking>& rows);

  // Default labels "item_1" ... "item_n".
  static std::vector<std::string> default_item_ids(int n);

  int assessors() const noexcept { return assessors_; }
  int items() const noexcept { return static_cast<int>(item_ids_.size()); }
  int rank(int assessor, int item) const {
    return ranks_[static_cast<std::size_t>(assessor) * static_cast<std::size_t>(items()) +
                  static_cast<std::size_t>(item)];
  }
  std::span<const int> row(int assessor) const {
    return std::span<const int>(ranks_).subspan(
        static_cast<std::size_t>(assessor) * static_cast<std::size_t>(items()),
        static_cast<std::size_t>(items()));
  }
  Ranking ranking(int assessor) const;
  const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
  const std::vector<int>& raw() const noexcept { return ranks_; }

  // Free-form description of how the data were produced (generator, seed).
  std::string provenance;

  friend bool operator==(const RankingDataset& a, const RankingDataset& b) {
    return a.assessors_ == b.assessors_ && a.item_ids_ == b.item_ids_ && a.ranks_ == b.ranks_;
  }

 private:
  std::vector<std::string> item_ids_;
  std::vector<int> ranks_;
  int assessors_ = 0;
};

// The relevant items and their true consensus. true_set[k] has true rank
// consensus[k]; generators list the set in true-rank order with consensus
// (1, ..., n*).
struct GroundTruth {
  ItemSet true_set;
  Ranking consensus;

  int n_star() const noexcept { return true_set.size(); }
  // Item with true rank r (1-based).
  int item_with_rank(int r) const;
};

enum class Generator { kTopRank, kRankConsistency };

const char* to_string(Generator g);
Generator parse_generator(const std::string& name);

struct SimulatedData {
  RankingDataset data;
  GroundTruth truth;
};

// Relevant items take ranks 1..n* from a Mallows(identity, alpha) draw in
// dimension n*; the rest take a uniform permutation of n*+1..n.
SimulatedData gen_top_rank(int n, int n_star, int assessors, double alpha, std::uint64_t seed,
                           const MallowsChainOptions& chain = {});

// Relevant items keep a Mallows-distributed relative order but occupy n*
// uniformly chosen positions; the rest fill the remaining positions at random.
SimulatedData gen_rank_consistency(int n, int n_star, int assessors, double alpha,
                                   std::uint64_t seed, const MallowsChainOptions& chain = {});

SimulatedData generate(Generator g, int n, int n_star, int assessors, double alpha,
                       std::uint64_t seed, const MallowsChainOptions& chain = {});

// Iterative rank-swap perturbation. At level i (1..levels) the relevant item
// with true rank n*-i+1 swaps ranks with a uniformly chosen non-relevant item,
// independently for round(fraction * N) uniformly chosen assessors.
RankingDataset apply_noise_swaps(const RankingDataset& ds, const GroundTruth& truth, int levels,
                                 double fraction, std::uint64_t seed);

}  // namespace lowbmm
