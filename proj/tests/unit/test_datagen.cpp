#include <gtest/gtest.h>

#include <cmath>

#include "lowbmm/datagen.hpp"
#include "lowbmm/error.hpp"

using namespace lowbmm;

namespace {

double mean_restricted_distance(const SimulatedData& sim) {
  double total = 0.0;
  for (int j = 0; j < sim.data.assessors(); ++j) {
    total += static_cast<double>(
        footrule(restrict_to(sim.data.ranking(j), sim.truth.true_set), sim.truth.consensus));
  }
  return total / sim.data.assessors();
}

double mean_mallows_distance(int m, double alpha, int count, std::uint64_t seed) {
  double total = 0.0;
  for (const auto& d : sample_mallows(MallowsParams{Ranking::identity(m), alpha}, count, seed)) {
    total += static_cast<double>(footrule(d, Ranking::identity(m)));
  }
  return total / count;
}

}  // namespace

TEST(RankingDataset, ValidatesRowsWithRowNumber) {
  try {
    RankingDataset({"a", "b", "c"}, {1, 2, 3, 1, 1, 3});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RankingDataset({"a", "b"}, {1, 2, 1}), DimensionError);
}

TEST(GenTopRank, RowsArePermutationsAndRelevantItemsOnTop) {
  const auto sim = gen_top_rank(20, 8, 50, 2.0, 1);
  EXPECT_EQ(sim.data.assessors(), 50);
  EXPECT_EQ(sim.data.items(), 20);
  EXPECT_EQ(sim.truth.consensus, Ranking::identity(8));
  for (int j = 0; j < 50; ++j) {
    ASSERT_TRUE(is_permutation(sim.data.row(j)));
    for (int item : sim.truth.true_set.members()) EXPECT_LE(sim.data.rank(j, item), 8);
  }
}

TEST(GenTopRank, HugeAlphaPlacesEachItemAtItsTrueRank) {
  const auto sim = gen_top_rank(15, 6, 10, 1e6, 2);
  for (int j = 0; j < 10; ++j) {
    for (int r = 1; r <= 6; ++r) EXPECT_EQ(sim.data.rank(j, sim.truth.item_with_rank(r)), r);
  }
}

TEST(GenTopRank, RestrictedDistanceMatchesMallowsBatch) {
  const auto sim = gen_top_rank(20, 8, 50, 10.0, 3);
  double ours = 0.0, ref = 0.0;
  // Average over several datasets and reference batches to damp noise.
  for (std::uint64_t s = 0; s < 20; ++s) {
    ours += mean_restricted_distance(gen_top_rank(20, 8, 50, 10.0, 100 + s));
    ref += mean_mallows_distance(8, 10.0, 50, 500 + s);
  }
  EXPECT_NEAR(ours / ref, 1.0, 0.10);
  EXPECT_GT(mean_restricted_distance(sim), 0.0);
}

TEST(GenTopRank, ComplementRanksAreUniform) {
  // Chi-square test on the rank of one fixed non-relevant item.
  const int n = 12, n_star = 4, N = 4000;
  const auto sim = gen_top_rank(n, n_star, N, 2.0, 4);
  const int item = sim.truth.true_set.complement().front();
  std::vector<double> counts(static_cast<std::size_t>(n - n_star), 0.0);
  for (int j = 0; j < N; ++j) {
    const int r = sim.data.rank(j, item);
    ASSERT_GT(r, n_star);
    counts[static_cast<std::size_t>(r - n_star - 1)] += 1.0;
  }
  const double expected = static_cast<double>(N) / (n - n_star);
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 7 degrees of freedom: the 0.99 quantile is 18.48.
  EXPECT_LT(chi2, 18.48);
}

TEST(GenRankConsistency, HugeAlphaForcesRelativeOrder) {
  const auto sim = gen_rank_consistency(20, 8, 30, 1e6, 5);
  for (int j = 0; j < 30; ++j) {
    ASSERT_TRUE(is_permutation(sim.data.row(j)));
    EXPECT_EQ(restrict_to(sim.data.ranking(j), sim.truth.true_set), sim.truth.consensus);
  }
}

TEST(GenRankConsistency, RelevantItemsAreNotConcentratedAtTheTop) {
  const auto sim = gen_rank_consistency(20, 8, 50, 2.0, 6);
  double mean = 0.0;
  for (int item : sim.truth.true_set.members()) {
    for (int j = 0; j < 50; ++j) mean += sim.data.rank(j, item);
  }
  mean /= 8.0 * 50.0;
  EXPECT_NEAR(mean, 10.5, 10.5 * 0.15);
}

TEST(GenRankConsistency, RestrictedDistanceMatchesMallowsBatch) {
  double ours = 0.0, ref = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    ours += mean_restricted_distance(gen_rank_consistency(20, 8, 50, 3.0, 200 + s));
    ref += mean_mallows_distance(8, 3.0, 50, 700 + s);
  }
  EXPECT_NEAR(ours / ref, 1.0, 0.10);
}

TEST(Generators, ReproducibleAndValidated) {
  EXPECT_EQ(gen_top_rank(20, 8, 5, 2.0, 7).data, gen_top_rank(20, 8, 5, 2.0, 7).data);
  EXPECT_EQ(gen_rank_consistency(20, 8, 5, 2.0, 7).data,
            gen_rank_consistency(20, 8, 5, 2.0, 7).data);
  EXPECT_NE(gen_top_rank(20, 8, 5, 2.0, 7).data, gen_top_rank(20, 8, 5, 2.0, 8).data);
  EXPECT_THROW(gen_top_rank(8, 8, 5, 2.0, 1), ConfigError);
  EXPECT_THROW(gen_top_rank(8, 0, 5, 2.0, 1), ConfigError);
  EXPECT_EQ(parse_generator("rank-consistency"), Generator::kRankConsistency);
  EXPECT_THROW(parse_generator("nope"), ConfigError);
}

TEST(NoiseSwaps, LevelZeroIsIdentity) {
  const auto sim = gen_top_rank(20, 8, 25, 10.0, 9);
  EXPECT_EQ(apply_noise_swaps(sim.data, sim.truth, 0, 0.9, 1), sim.data);
}

TEST(NoiseSwaps, FullFractionMovesBottomItemInEveryRow) {
  const auto sim = gen_top_rank(20, 8, 25, 10.0, 10);
  const auto noisy = apply_noise_swaps(sim.data, sim.truth, 1, 1.0, 2);
  const int bottom = sim.truth.item_with_rank(8);
  for (int j = 0; j < 25; ++j) {
    ASSERT_TRUE(is_permutation(noisy.row(j)));
    EXPECT_NE(noisy.rank(j, bottom), sim.data.rank(j, bottom));
    EXPECT_GT(noisy.rank(j, bottom), 8);
  }
}

TEST(NoiseSwaps, LevelFourTouchesOnlyTheBottomFour) {
  const auto sim = gen_top_rank(20, 8, 25, 10.0, 11);
  const auto noisy = apply_noise_swaps(sim.data, sim.truth, 4, 0.9, 3);
  for (int r = 1; r <= 4; ++r) {
    const int item = sim.truth.item_with_rank(r);
    for (int j = 0; j < 25; ++j) EXPECT_EQ(noisy.rank(j, item), sim.data.rank(j, item));
  }
  int changed_rows = 0;
  for (int r = 5; r <= 8; ++r) {
    const int item = sim.truth.item_with_rank(r);
    for (int j = 0; j < 25; ++j) changed_rows += noisy.rank(j, item) != sim.data.rank(j, item);
  }
  // round(0.9 * 25) = 23 rows per level (half rounds away from zero).
  EXPECT_EQ(changed_rows, 4 * 23);
  EXPECT_THROW(apply_noise_swaps(sim.data, sim.truth, 9, 0.9, 1), ConfigError);
}
