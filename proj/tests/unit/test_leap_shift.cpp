#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "lowbmm/leap_shift.hpp"
#include "oracles.hpp"

using namespace lowbmm;

TEST(LeapShift, ShiftExample) {
  const std::vector<int> rho{1, 2, 3, 4};
  const auto out = apply_leap_shift(std::span<const int>(rho), LeapShiftMove{1, 2, 4});
  EXPECT_EQ(out, (std::vector<int>{1, 4, 2, 3}));
  const auto back = apply_leap_shift(std::span<const int>(out), LeapShiftMove{1, 4, 2});
  EXPECT_EQ(back, rho);
}

TEST(LeapShift, InPlaceKeepsOrderInSync) {
  Rng rng(3);
  std::vector<int> ranks = random_permutation(rng, 9);
  std::vector<int> order = Ranking(ranks).order();
  for (int t = 0; t < 2000; ++t) {
    const auto move = draw_leap_shift(ranks, 3, rng);
    apply_leap_shift(ranks, order, move);
    ASSERT_TRUE(is_permutation(ranks));
    ASSERT_EQ(order, Ranking(ranks).order());
    ASSERT_EQ(ranks[static_cast<std::size_t>(move.item)], move.to);
    ASSERT_LE(std::abs(move.to - move.from), 3);
    ASSERT_NE(move.to, move.from);
  }
}

TEST(LeapShift, TwoItemsIsSymmetricTransposition) {
  Rng rng(4);
  const Ranking rho({1, 2});
  for (int t = 0; t < 20; ++t) {
    const auto p = leap_and_shift_propose(rho, 1, rng);
    EXPECT_EQ(p.proposed.vector(), (std::vector<int>{2, 1}));
    EXPECT_DOUBLE_EQ(p.log_forward, p.log_backward);
  }
}

TEST(LeapShift, SupportSize) {
  EXPECT_EQ(leap_support_size(1, 5, 2), 2);
  EXPECT_EQ(leap_support_size(3, 5, 2), 4);
  EXPECT_EQ(leap_support_size(5, 5, 2), 2);
  EXPECT_EQ(leap_support_size(2, 5, 10), 4);
}

TEST(LeapShift, AnalyticMassMatchesEnumeration) {
  // Every reachable state's enumerated mass equals the closed form.
  for (int m = 2; m <= 6; ++m) {
    for (int l = 1; l < m; ++l) {
      for (const auto& rho : oracle::all_permutations(m)) {
        const auto exact = oracle::leap_shift_exact(rho, l);
        double total = 0.0;
        for (const auto& [state, mass] : exact) {
          total += mass;
          // The leaping item is the one that moved furthest (either one of
          // an adjacent transposition; its mass is symmetric).
          int a = 0, b = 0, best = -1;
          for (int i = 0; i < m; ++i) {
            const int d = std::abs(state[static_cast<std::size_t>(i)] - rho[static_cast<std::size_t>(i)]);
            if (d > best) {
              best = d;
              a = rho[static_cast<std::size_t>(i)];
              b = state[static_cast<std::size_t>(i)];
            }
          }
          EXPECT_NEAR(std::exp(leap_shift_log_mass(a, b, m, l)), mass, 1e-12);
          // Reverse move mass from the proposed state.
          const auto rev = oracle::leap_shift_exact(state, l);
          EXPECT_NEAR(std::exp(leap_shift_log_mass(b, a, m, l)), rev.at(rho), 1e-12);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
      }
    }
  }
}

TEST(LeapShift, EmpiricalFrequenciesWithinOnePercent) {
  const std::vector<int> rho{3, 1, 5, 2, 4};
  const auto exact = oracle::leap_shift_exact(rho, 2);
  Rng rng(5);
  std::map<std::vector<int>, int> counts;
  const int draws = 4000000;
  const Ranking r(rho);
  for (int t = 0; t < draws; ++t) {
    const auto p = leap_and_shift_propose(r, 2, rng);
    ++counts[p.proposed.vector()];
    if (t < 1000) {
      EXPECT_NEAR(std::exp(p.log_forward), exact.at(p.proposed.vector()), 1e-12);
    }
  }
  EXPECT_EQ(counts.size(), exact.size());
  for (const auto& [state, mass] : exact) {
    const double freq = counts[state] / static_cast<double>(draws);
    EXPECT_NEAR(freq / mass, 1.0, 0.01);
  }
}
