#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lowbmm/perm.hpp"
#include "lowbmm/sampler.hpp"

namespace lowbmm {

// Per-item inclusion frequency over the stored draws (column means of the
// draw-by-item indicator matrix W).
struct SelectionFrequencies {
  std::vector<double> w_bar;
  std::vector<std::int64_t> counts;
  std::size_t draws = 0;
};

SelectionFrequencies selection_frequencies(const PosteriorSamples& samples);

// The k items with the largest inclusion frequency, in descending frequency
// order, ties by ascending item index. Requires n* <= k <= n.
ItemSet highest_probability_set(const SelectionFrequencies& w, int n_star, int k);

// k = #{items with w_bar > 0} (at least n*). Every such item has a defined
// conditional mean rank. Capping k near n* tends to drop the lowest-ranked
// relevant item, whose inclusion frequency is diluted across many
// exchangeable non-relevant items.
int default_hps_size(const SelectionFrequencies& w, int n_star);

// Point estimates of the relevant set and its consensus.
struct PosteriorSummary {
  ItemSet hps;                // candidate set A' of size k
  std::vector<double> x_bar;  // conditional mean consensus rank, aligned with hps
  ItemSet a_hat;              // n* members of hps with the smallest x_bar, in rho_hat order
  Ranking rho_hat;            // consensus ranks aligned with a_hat
};

// x_bar_i = mean rank of item i over the draws that include it. Throws
// DomainError when an hps member never appears (choose a smaller k).
PosteriorSummary posterior_point_estimates(const PosteriorSamples& samples, int k);
PosteriorSummary posterior_point_estimates(const PosteriorSamples& samples);

// P(rank <= K | item included) per item; empty when the item never appears.
std::vector<std::optional<double>> topk_inclusion_probabilities(const PosteriorSamples& samples,
                                                                int K);

// Members of a_hat whose top-K probability exceeds c, in a_hat order.
ItemSet top_probability_selection(const PosteriorSamples& samples, const PosteriorSummary& summary,
                                  int K, double c);

// Marginal P(rank = r | included) for r = 1..n*, row-major by item
// (n * n* entries); rows of never-included items are zero.
std::vector<double> rank_marginals(const PosteriorSamples& samples);

// Rows of the heatplot table: items of the hps, a_hat first in rho_hat order,
// then the remaining hps items by ascending x_bar.
struct HeatplotCell {
  int position;  // 1-based column of the item in the plot
  int item;
  int rank;
  double probability;
  double selection_frequency;
};
std::vector<HeatplotCell> heatplot_cells(const PosteriorSamples& samples,
                                         const PosteriorSummary& summary);

struct TracePoint {
  int chain;
  std::int64_t iteration;
  int item;
  int rank;
};
// Rank of each of the first `top` items of rho_hat along the stored draws
// (only draws that include the item).
std::vector<TracePoint> trace_points(const PosteriorSamples& samples,
                                     const PosteriorSummary& summary, int top);

struct ViolinPoint {
  int K;
  int item;
  double probability;
};
// Top-K inclusion probabilities for every included item and each K in `grid`.
std::vector<ViolinPoint> violin_points(const PosteriorSamples& samples, const std::vector<int>& grid);

// {25, 50, 75, 100} where <= n*, or quarters of n* when n* < 25.
std::vector<int> default_k_grid(int n_star);

}  // namespace lowbmm
