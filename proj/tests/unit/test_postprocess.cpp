#include <gtest/gtest.h>

#include <numeric>

#include "lowbmm/datagen.hpp"
#include "lowbmm/error.hpp"
#include "lowbmm/postprocess.hpp"

using namespace lowbmm;

namespace {

// Three draws over n = 5, n* = 2.
PosteriorSamples three_draws() {
  PosteriorSamples s(5, 2, RankingDataset::default_item_ids(5));
  auto add = [&](std::vector<int> items, std::vector<int> ranks, std::int64_t it) {
    s.add_draw(0, it, items, ranks);
  };
  add({0, 1}, {1, 2}, 1);
  add({0, 2}, {1, 2}, 2);
  add({0, 1}, {2, 1}, 3);
  return s;
}

}  // namespace

TEST(SelectionFrequencies, HandExample) {
  const auto w = selection_frequencies(three_draws());
  EXPECT_EQ(w.draws, 3u);
  EXPECT_DOUBLE_EQ(w.w_bar[0], 1.0);
  EXPECT_DOUBLE_EQ(w.w_bar[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.w_bar[2], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.w_bar[3], 0.0);
  EXPECT_EQ(default_hps_size(w, 2), 3);
  EXPECT_THROW(selection_frequencies(PosteriorSamples(3, 1, RankingDataset::default_item_ids(3))),
               DomainError);
}

TEST(SelectionFrequencies, SumToNStarOnChainOutput) {
  const auto sim = gen_top_rank(20, 6, 5, 2.0, 1);
  SamplerConfig c = SamplerConfig::defaults(6, 2.0, 3000);
  c.seed = 2;
  const auto s = run_chain(sim.data, c);
  const auto w = selection_frequencies(s);
  EXPECT_NEAR(std::accumulate(w.w_bar.begin(), w.w_bar.end(), 0.0), 6.0, 1e-9);
  for (double v : w.w_bar) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(HighestProbabilitySet, OrderAndBounds) {
  const auto w = selection_frequencies(three_draws());
  EXPECT_EQ(highest_probability_set(w, 2, 3).vector(), (std::vector<int>{0, 1, 2}));
  // Ties among zero-frequency items go by ascending index.
  EXPECT_EQ(highest_probability_set(w, 2, 5).vector(), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_THROW(highest_probability_set(w, 2, 1), ConfigError);
  EXPECT_THROW(highest_probability_set(w, 2, 6), ConfigError);
}

TEST(PointEstimates, HandExample) {
  const auto s = three_draws();
  const auto sum = posterior_point_estimates(s);
  EXPECT_EQ(sum.hps.vector(), (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(sum.x_bar.size(), 3u);
  EXPECT_DOUBLE_EQ(sum.x_bar[0], 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(sum.x_bar[1], 1.5);
  EXPECT_DOUBLE_EQ(sum.x_bar[2], 2.0);
  EXPECT_EQ(sum.a_hat.vector(), (std::vector<int>{0, 1}));
  EXPECT_EQ(sum.rho_hat.vector(), (std::vector<int>{1, 2}));
  // An hps member that never appears has no mean rank.
  EXPECT_THROW(posterior_point_estimates(s, 4), DomainError);
}

TEST(TopK, HandExample) {
  const auto s = three_draws();
  const auto p1 = topk_inclusion_probabilities(s, 1);
  EXPECT_DOUBLE_EQ(*p1[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*p1[1], 0.5);
  EXPECT_DOUBLE_EQ(*p1[2], 0.0);
  EXPECT_FALSE(p1[3].has_value());
  const auto sum = posterior_point_estimates(s);
  // Strict inequality: item 1 sits exactly at the cut-off.
  EXPECT_EQ(top_probability_selection(s, sum, 1, 0.5).vector(), (std::vector<int>{0}));
  EXPECT_EQ(top_probability_selection(s, sum, 2, 0.5).vector(), (std::vector<int>{0, 1}));
  EXPECT_TRUE(top_probability_selection(s, sum, 2, 1.0).vector().empty());
  EXPECT_THROW(topk_inclusion_probabilities(s, 3), ConfigError);
  EXPECT_THROW(top_probability_selection(s, sum, 1, 1.5), ConfigError);
}

TEST(TopK, MonotoneInK) {
  const auto sim = gen_top_rank(30, 8, 6, 1.0, 3);
  SamplerConfig c = SamplerConfig::defaults(8, 1.0, 4000);
  c.seed = 4;
  const auto s = run_chain(sim.data, c);
  std::vector<std::optional<double>> prev;
  for (int K = 1; K <= 8; ++K) {
    const auto cur = topk_inclusion_probabilities(s, K);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!cur[i]) continue;
      if (K == 8) EXPECT_DOUBLE_EQ(*cur[i], 1.0);
      if (!prev.empty()) EXPECT_GE(*cur[i], *prev[i]);
    }
    prev = cur;
  }
}

TEST(RankMarginals, RowsSumToOneForIncludedItems) {
  const auto m = rank_marginals(three_draws());
  ASSERT_EQ(m.size(), 10u);
  EXPECT_DOUBLE_EQ(m[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[2] + m[3], 1.0);
  EXPECT_DOUBLE_EQ(m[6] + m[7], 0.0);
}

TEST(Plots, HeatplotTraceViolin) {
  const auto s = three_draws();
  const auto sum = posterior_point_estimates(s);
  const auto cells = heatplot_cells(s, sum);
  ASSERT_EQ(cells.size(), 3u * 2u);
  EXPECT_EQ(cells.front().item, 0);
  EXPECT_EQ(cells.front().position, 1);
  EXPECT_EQ(cells.back().item, 2);
  EXPECT_EQ(cells.back().position, 3);
  const auto tr = trace_points(s, sum, 1);
  EXPECT_EQ(tr.size(), 3u);  // item 0 appears in every draw
  const auto vi = violin_points(s, {1, 2});
  EXPECT_EQ(vi.size(), 6u);
  EXPECT_EQ(default_k_grid(100), (std::vector<int>{25, 50, 75, 100}));
  EXPECT_EQ(default_k_grid(60), (std::vector<int>{25, 50}));
  EXPECT_EQ(default_k_grid(8), (std::vector<int>{2, 4, 6, 8}));
  EXPECT_EQ(default_k_grid(1), (std::vector<int>{1}));
}
