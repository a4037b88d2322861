#include "lowbmm/alpha.hpp"

#include <algorithm>

#include <cmath>
#include <sstream>

#include "lowbmm/error.hpp"
#include "lowbmm/perm.hpp"
#include "lowbmm/random.hpp"

namespace lowbmm {

double mean_pairwise_distance(const RankingDataset& ds) {
  const int N = ds.assessors();
  if (N < 2) throw DomainError("mean pairwise distance needs at least two assessors");
  std::int64_t total = 0;
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) total += footrule(ds.row(j), ds.row(k));
  }
  // Each unordered pair appears twice in the ordered double sum.
  return 2.0 * static_cast<double>(total) / (static_cast<double>(N) * (N - 1));
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(std::pow(10.0, -3.0 + 5.0 * i / 12.0));
  return grid;
}

double locate_crossing(const std::vector<double>& grid, const std::vector<double>& curve,
                       double target, std::optional<std::string>& warning) {
  const std::size_t g = grid.size();
  if (target >= curve.front()) {
    if (target > curve.front()) {
      warning = "observed mean distance lies above every simulated value; clamped to the "
                "smallest grid alpha";
    }
    return grid.front();
  }
  // At or below the curve's minimum (e.g. identical rows): nothing on the grid
  // is concentrated enough, so no genuine crossing exists.
  const bool below_all = target <= *std::min_element(curve.begin(), curve.end());
  for (std::size_t i = 0; !below_all && i + 1 < g; ++i) {
    const double hi = curve[i];
    const double lo = curve[i + 1];
    if (hi >= target && target >= lo) {
      if (hi == lo) return grid[i];
      const double t = (hi - target) / (hi - lo);
      return grid[i] + t * (grid[i + 1] - grid[i]);
    }
  }
  std::ostringstream msg;
  msg << "observed mean distance " << target << " lies below every simulated value; clamped to "
      << "the largest grid alpha";
  warning = msg.str();
  return grid.back();
}

AlphaGridResult estimate_alpha(const RankingDataset& observed, const std::vector<double>& grid,
                               const AlphaEstimateOptions& options) {
  if (grid.empty()) throw ConfigError("alpha grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw ConfigError("alpha grid values must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("alpha grid must be strictly ascending");
  }
  if (options.reps < 1) throw ConfigError("reps must be at least 1");
  const int N = observed.assessors();
  const int n = observed.items();
  if (N < 2) throw DomainError("alpha estimation needs at least two assessors");

  AlphaGridResult out;
  out.grid = grid;
  out.observed_mean = mean_pairwise_distance(observed);
  const auto ids = RankingDataset::default_item_ids(n);
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double acc = 0.0;
    for (int rep = 0; rep < options.reps; ++rep) {
      const std::uint64_t stream = gi * static_cast<std::uint64_t>(options.reps) +
                                   static_cast<std::uint64_t>(rep);
      const auto draws = sample_mallows(MallowsParams{Ranking::identity(n), grid[gi]}, N,
                                        derive_seed(options.seed, stream), options.chain);
      acc += mean_pairwise_distance(RankingDataset(ids, draws));
    }
    out.mean_dists.push_back(acc / options.reps);
  }
  out.alpha_hat_n = locate_crossing(out.grid, out.mean_dists, out.observed_mean, out.warning);
  if (options.n_star) {
    out.alpha_hat_nstar = rescale_alpha(out.alpha_hat_n, n, *options.n_star);
    if (*options.n_star == 1 && !out.warning) {
      out.warning = "n_star = 1: the rescaled alpha is 0 (degenerate)";
    }
  }
  return out;
}

double rescale_alpha(double alpha_hat_n, int n, int n_star) {
  if (n_star < 1 || n_star > n) throw ConfigError("rescale_alpha requires 1 <= n_star <= n");
  if (!(alpha_hat_n > 0.0)) throw ConfigError("rescale_alpha requires a positive alpha");
  if (n == 1) return alpha_hat_n;
  return alpha_hat_n * (static_cast<double>(n) / n_star) *
         (static_cast<double>(max_footrule(n_star)) / static_cast<double>(max_footrule(n)));
}

}  // namespace lowbmm
