#include <gtest/gtest.h>

#include <map>

#include "lowbmm/error.hpp"
#include "lowbmm/mallows.hpp"
#include "lowbmm/random.hpp"
#include "oracles.hpp"

using namespace lowbmm;

namespace {

std::map<std::vector<int>, double> empirical(const std::vector<Ranking>& draws) {
  std::map<std::vector<int>, double> f;
  for (const auto& d : draws) f[d.vector()] += 1.0 / static_cast<double>(draws.size());
  return f;
}

}  // namespace

TEST(LogKernel, Examples) {
  const MallowsParams p{Ranking({1, 2, 3}), 3.0};
  EXPECT_DOUBLE_EQ(log_kernel(Ranking({1, 2, 3}), p), 0.0);
  EXPECT_DOUBLE_EQ(log_kernel(Ranking({3, 2, 1}), p), -4.0);
  EXPECT_THROW(log_kernel(Ranking({1, 2}), p), DimensionError);
}

TEST(LogKernel, MatchesFootruleOracleAndRightInvariance) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const Ranking rho(random_permutation(rng, 7));
    const Ranking r(random_permutation(rng, 7));
    const MallowsParams p{rho, 1.7};
    EXPECT_NEAR(log_kernel(r, p), -1.7 / 7 * oracle::footrule(r.vector(), rho.vector()), 1e-12);
    const auto relabel = random_permutation(rng, 7, 0);
    std::vector<int> rr(7), pr(7);
    for (int i = 0; i < 7; ++i) {
      rr[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] = r[i];
      pr[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] = rho[i];
    }
    EXPECT_NEAR(log_kernel(Ranking(rr), MallowsParams{Ranking(pr), 1.7}), log_kernel(r, p), 1e-12);
  }
}

TEST(MallowsParams, Validation) {
  EXPECT_THROW((MallowsParams{Ranking({1, 2}), 0.0}.validate()), ConfigError);
  EXPECT_THROW((MallowsParams{Ranking({1, 2}), -1.0}.validate()), ConfigError);
  EXPECT_NO_THROW((MallowsParams{Ranking({1, 2}), 1e-15}.validate()));
}

TEST(SampleMallows, DeterministicGivenSeed) {
  const MallowsParams p{Ranking::identity(6), 2.0};
  EXPECT_EQ(sample_mallows(p, 50, 9), sample_mallows(p, 50, 9));
  EXPECT_NE(sample_mallows(p, 50, 9), sample_mallows(p, 50, 10));
}

TEST(SampleMallows, HugeAlphaConcentratesOnConsensus) {
  const Ranking rho({2, 5, 1, 3, 4});
  const auto draws = sample_mallows(MallowsParams{rho, 1e3}, 1000, 3);
  int hits = 0;
  for (const auto& d : draws) hits += d == rho;
  EXPECT_GT(hits / 1000.0, 0.99);
}

TEST(SampleMallows, TinyAlphaApproachesUniformMeanDistance) {
  double uniform_mean = 0.0;
  const auto perms = oracle::all_permutations(5);
  for (const auto& p : perms) uniform_mean += oracle::footrule(p, perms.front());
  uniform_mean /= static_cast<double>(perms.size());  // 8 for m = 5
  const auto draws = sample_mallows(MallowsParams{Ranking::identity(5), 1e-15}, 20000, 4);
  double mean = 0.0;
  for (const auto& d : draws) mean += static_cast<double>(footrule(d, Ranking::identity(5)));
  mean /= static_cast<double>(draws.size());
  EXPECT_NEAR(mean, uniform_mean, 0.1);
}

TEST(SampleMallows, TotalVariationAgainstEnumeration) {
  struct Case {
    std::vector<int> rho;
    double alpha;
  };
  const std::vector<Case> cases = {
      {{1, 2, 3, 4}, 2.0}, {{3, 1, 4, 2}, 0.7}, {{2, 4, 1, 5, 3}, 2.0}, {{1, 2, 3, 4, 5}, 4.0}};
  std::uint64_t seed = 100;
  for (const auto& c : cases) {
    const auto exact = oracle::mallows_exact(c.rho, c.alpha);
    const auto draws = sample_mallows(MallowsParams{Ranking(c.rho), c.alpha}, 100000, seed++);
    const double tv = oracle::total_variation(empirical(draws), exact);
    EXPECT_LE(tv, 0.02) << "m=" << c.rho.size() << " alpha=" << c.alpha;
  }
}

TEST(SampleMallows, DimensionOneAndOptions) {
  const auto one = sample_mallows(MallowsParams{Ranking::identity(1), 1.0}, 3, 1);
  ASSERT_EQ(one.size(), 3u);
  for (const auto& d : one) EXPECT_EQ(d, Ranking::identity(1));
  MallowsChainOptions o;
  EXPECT_EQ(o.resolved_burn_in(7), 700);
  EXPECT_EQ(o.resolved_thin(7), 70);
  EXPECT_EQ(o.resolved_leap(7), 1);
  EXPECT_EQ(o.resolved_leap(20), 4);
}
