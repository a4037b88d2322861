#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lowbmm/datagen.hpp"
#include "lowbmm/mallows.hpp"

namespace lowbmm {

// Mean footrule over ordered assessor pairs:
//   1 / (N (N-1)) * sum_j sum_{k != j} d(R_j, R_k).
double mean_pairwise_distance(const RankingDataset& ds);

struct AlphaGridResult {
  std::vector<double> grid;        // candidate alpha_0, strictly ascending
  std::vector<double> mean_dists;  // simulated mean pairwise distance per grid point
  double observed_mean = 0.0;
  double alpha_hat_n = 0.0;
  std::optional<double> alpha_hat_nstar;  // set when an n* was supplied
  std::optional<std::string> warning;     // clamped to a grid end, or degenerate
};

struct AlphaEstimateOptions {
  int reps = 5;
  std::uint64_t seed = 0;
  std::optional<int> n_star;  // rescale to this dimension when set
  MallowsChainOptions chain;
};

// Logarithmically spaced grid from 1e-3 to 1e2 (13 points).
std::vector<double> default_alpha_grid();

// For every grid value, simulates `reps` datasets of the observed shape from
// Mallows(identity, alpha_0) and averages their mean pairwise distances; then
// locates where that curve crosses the observed mean, interpolating linearly
// between the bracketing grid points.
AlphaGridResult estimate_alpha(const RankingDataset& observed, const std::vector<double>& grid,
                               const AlphaEstimateOptions& options);

// Crossing point of a (noisy, non-increasing) curve with `target`. Exposed for
// testing; fills `warning` when clamped.
double locate_crossing(const std::vector<double>& grid, const std::vector<double>& curve,
                       double target, std::optional<std::string>& warning);

// alpha_n * (n / n*) * (max footrule in n*) / (max footrule in n).
double rescale_alpha(double alpha_hat_n, int n, int n_star);

}  // namespace lowbmm
