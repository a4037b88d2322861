#include <gtest/gtest.h>

#include "lowbmm/error.hpp"
#include "lowbmm/perm.hpp"
#include "lowbmm/random.hpp"
#include "oracles.hpp"

using namespace lowbmm;

namespace {

Ranking R(std::vector<int> v) { return Ranking(std::move(v)); }

Ranking random_ranking(Rng& rng, int m) { return Ranking(random_permutation(rng, m)); }

}  // namespace

TEST(Ranking, RejectsNonPermutations) {
  EXPECT_THROW(R({1, 1, 2}), DataError);
  EXPECT_THROW(R({0, 1, 2}), DataError);
  EXPECT_THROW(R({1, 2, 4}), DataError);
  EXPECT_NO_THROW(R({2, 3, 1}));
  EXPECT_NO_THROW(R({}));
}

TEST(Ranking, OrderListsItemsByRank) {
  EXPECT_EQ(R({3, 1, 2}).order(), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(Ranking::identity(4).vector(), (std::vector<int>{1, 2, 3, 4}));
}

TEST(ItemSet, ValidatesMembers) {
  EXPECT_THROW(ItemSet({0, 0}, 3), IndexError);
  EXPECT_THROW(ItemSet({3}, 3), IndexError);
  EXPECT_THROW(ItemSet({-1}, 3), IndexError);
  const ItemSet s({4, 1}, 6);
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.position(1), 1);
  EXPECT_EQ(s.sorted(), (std::vector<int>{1, 4}));
  EXPECT_EQ(s.complement(), (std::vector<int>{0, 2, 3, 5}));
  EXPECT_EQ(s.order_by(R({2, 1})), (std::vector<int>{1, 4}));
}

TEST(Footrule, Examples) {
  EXPECT_EQ(footrule(R({1, 2, 3}), R({1, 2, 3})), 0);
  EXPECT_EQ(footrule(R({1, 2, 3}), R({3, 2, 1})), 4);
  EXPECT_THROW(footrule(R({1, 2}), R({1, 2, 3})), DimensionError);
}

TEST(Footrule, MatchesLoopOracleInDimensionEight) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_ranking(rng, 8);
    const auto b = random_ranking(rng, 8);
    EXPECT_EQ(footrule(a, b), oracle::footrule(a.vector(), b.vector()));
  }
}

TEST(Footrule, MetricPropertiesAndRightInvariance) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_ranking(rng, 7);
    const auto b = random_ranking(rng, 7);
    EXPECT_EQ(footrule(a, b), footrule(b, a));
    EXPECT_GE(footrule(a, b), 0);
    EXPECT_EQ(footrule(a, b) == 0, a == b);
    // Relabel items by a common permutation.
    const auto relabel = random_permutation(rng, 7, 0);
    std::vector<int> pa(7), pb(7);
    for (int i = 0; i < 7; ++i) {
      pa[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] = a[i];
      pb[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] = b[i];
    }
    EXPECT_EQ(footrule(R(pa), R(pb)), footrule(a, b));
  }
}

TEST(Kendall, Examples) {
  EXPECT_EQ(kendall(R({1, 2, 3}), R({1, 2, 3})), 0);
  EXPECT_EQ(kendall(R({1, 2}), R({2, 1})), 1);
  EXPECT_EQ(kendall(R({1, 2, 3, 4}), R({4, 3, 2, 1})), 6);
  EXPECT_THROW(kendall(R({1}), R({1, 2})), DimensionError);
}

TEST(Kendall, MatchesPairCountOracleUpToDimensionSix) {
  for (int m = 1; m <= 6; ++m) {
    const auto perms = oracle::all_permutations(m);
    const auto& id = perms.front();
    for (const auto& p : perms) {
      EXPECT_EQ(kendall(R(id), R(p)), oracle::kendall(id, p));
    }
  }
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_ranking(rng, 6);
    const auto b = random_ranking(rng, 6);
    EXPECT_EQ(kendall(a, b), oracle::kendall(a.vector(), b.vector()));
  }
}

TEST(Kendall, NeverExceedsFootrule) {
  Rng rng(14);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_ranking(rng, 9);
    const auto b = random_ranking(rng, 9);
    EXPECT_LE(kendall(a, b), footrule(a, b));
    EXPECT_LE(footrule(a, b), 2 * kendall(a, b));
  }
}

TEST(RankVector, Examples) {
  const std::vector<double> x{0.1, 0.5, 0.3};
  EXPECT_EQ(rank_vector(x).vector(), (std::vector<int>{1, 3, 2}));
  const std::vector<double> desc{5, 4, 3, 2, 1};
  EXPECT_EQ(rank_vector(desc).vector(), (std::vector<int>{5, 4, 3, 2, 1}));
  const std::vector<double> tied{2, 2, 1};
  EXPECT_EQ(rank_vector(tied).vector(), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(rank_vector_with_ties(tied), (std::vector<int>{3, 3, 1}));
}

TEST(RankVector, RejectsNonFinite) {
  const std::vector<double> bad{1.0, std::nan("")};
  EXPECT_THROW(rank_vector(bad), DataError);
}

TEST(RankVector, IdentityOnPermutations) {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_permutation(rng, 10);
    std::vector<double> d(p.begin(), p.end());
    EXPECT_EQ(rank_vector(d).vector(), p);
    EXPECT_EQ(rank_vector_with_ties(d), p);
  }
}

TEST(Restrict, Examples) {
  const auto r = R({4, 1, 3, 2, 5});
  // Items {2,4,5} and {1,3} in 1-based terms.
  EXPECT_EQ(restrict_to(r, ItemSet({1, 3, 4}, 5)).vector(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(restrict_to(r, ItemSet({0, 2}, 5)).vector(), (std::vector<int>{2, 1}));
  EXPECT_EQ(restrict_to(r, ItemSet({0, 1, 2, 3, 4}, 5)), r);
  EXPECT_THROW(restrict_to(r, ItemSet({0}, 4)), IndexError);
}

TEST(Restrict, PreservesRelativeOrder) {
  Rng rng(16);
  for (int t = 0; t < 200; ++t) {
    const auto r = random_ranking(rng, 9);
    const auto members = sample_without_replacement(rng, 9, 4);
    const auto sub = restrict_to(r, ItemSet(members, 9));
    EXPECT_TRUE(is_permutation(sub.values()));
    std::vector<int> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    // oracle::restrict_ranks works on ascending subsets; map back.
    const auto expect = oracle::restrict_ranks(r.vector(), sorted);
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto pos = static_cast<std::size_t>(
          std::find(sorted.begin(), sorted.end(), members[k]) - sorted.begin());
      EXPECT_EQ(sub[static_cast<int>(k)], expect[pos]);
    }
  }
}

TEST(MaxFootrule, ClosedFormMatchesExhaustiveSearch) {
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(max_footrule(m), oracle::max_footrule(m)) << "m=" << m;
  EXPECT_EQ(max_footrule(1), 0);
  EXPECT_EQ(max_footrule(4), 8);
  EXPECT_EQ(oracle::max_footrule(7), 24);
  EXPECT_EQ(max_footrule(7), 24);
  EXPECT_EQ(max_footrule(20), 200);
  EXPECT_THROW(max_footrule(0), ConfigError);
}
