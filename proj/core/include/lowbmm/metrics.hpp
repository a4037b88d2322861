#pragma once

#include <vector>

#include "lowbmm/datagen.hpp"
#include "lowbmm/perm.hpp"
#include "lowbmm/postprocess.hpp"

namespace lowbmm {

struct EvalReport {
  int n_corr = 0;
  double coverage = 0.0;   // n_corr / n*
  double d_norm = 0.0;     // +inf when n_corr == 0
  double d_R = 0.0;
  double wall_time_sec = 0.0;
};

// |true ∩ est| / n*. Throws DimensionError unless both sets have n* members.
double coverage(const ItemSet& true_set, const ItemSet& est_set);

// Items present in both sets, in the order of `true_set`.
std::vector<int> intersection(const ItemSet& true_set, const ItemSet& est_set);

// Footrule between true and estimated ranks over the shared items, divided by
// the number of shared items; infinity when nothing is shared.
double d_norm(const GroundTruth& truth, const PosteriorSummary& est);

// Kendall distance over the shared items (each ranked within its own
// consensus) plus (n* - n_corr)(n + n* + 1)/2.
double recovery_distance(const GroundTruth& truth, const PosteriorSummary& est, int n_items);

EvalReport evaluate(const GroundTruth& truth, const PosteriorSummary& est, int n_items,
                    double wall_time_sec = 0.0);

// Mean-rank aggregation: the n* items with the smallest mean rank, ranked by
// that mean (ties by item index). hps equals a_hat and x_bar holds the means.
PosteriorSummary borda(const RankingDataset& ds, int n_star);

}  // namespace lowbmm
