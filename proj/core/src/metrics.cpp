#include "lowbmm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lowbmm/error.hpp"

namespace lowbmm {

namespace {

void check_sizes(const ItemSet& true_set, const ItemSet& est_set) {
  if (true_set.size() != est_set.size()) {
    throw DimensionError("estimated set has " + std::to_string(est_set.size()) +
                         " items but the true set has " + std::to_string(true_set.size()));
  }
  if (true_set.size() == 0) throw DimensionError("empty relevant set");
}

// Rank of `item` in its consensus, given the set and aligned ranks.
int rank_in(const ItemSet& set, const Ranking& ranks, int item) {
  return ranks[set.position(item)];
}

}  // namespace

std::vector<int> intersection(const ItemSet& true_set, const ItemSet& est_set) {
  std::vector<int> out;
  for (int item : true_set.members()) {
    if (est_set.contains(item)) out.push_back(item);
  }
  return out;
}

double coverage(const ItemSet& true_set, const ItemSet& est_set) {
  check_sizes(true_set, est_set);
  return static_cast<double>(intersection(true_set, est_set).size()) / true_set.size();
}

double d_norm(const GroundTruth& truth, const PosteriorSummary& est) {
  check_sizes(truth.true_set, est.a_hat);
  const auto common = intersection(truth.true_set, est.a_hat);
  if (common.empty()) return std::numeric_limits<double>::infinity();
  std::int64_t d = 0;
  for (int item : common) {
    d += std::abs(rank_in(truth.true_set, truth.consensus, item) -
                  rank_in(est.a_hat, est.rho_hat, item));
  }
  return static_cast<double>(d) / static_cast<double>(common.size());
}

double recovery_distance(const GroundTruth& truth, const PosteriorSummary& est, int n_items) {
  check_sizes(truth.true_set, est.a_hat);
  const auto common = intersection(truth.true_set, est.a_hat);
  std::vector<int> t, e;
  for (int item : common) {
    t.push_back(rank_in(truth.true_set, truth.consensus, item));
    e.push_back(rank_in(est.a_hat, est.rho_hat, item));
  }
  const int n_star = truth.n_star();
  const auto missed = static_cast<double>(n_star - static_cast<int>(common.size()));
  return static_cast<double>(kendall(t, e)) + missed * (n_items + n_star + 1) / 2.0;
}

EvalReport evaluate(const GroundTruth& truth, const PosteriorSummary& est, int n_items,
                    double wall_time_sec) {
  EvalReport r;
  r.n_corr = static_cast<int>(intersection(truth.true_set, est.a_hat).size());
  r.coverage = coverage(truth.true_set, est.a_hat);
  r.d_norm = d_norm(truth, est);
  r.d_R = recovery_distance(truth, est, n_items);
  r.wall_time_sec = wall_time_sec;
  return r;
}

PosteriorSummary borda(const RankingDataset& ds, int n_star) {
  const int n = ds.items();
  const int N = ds.assessors();
  if (N < 1) throw DomainError("BORDA needs at least one assessor");
  if (n_star < 1 || n_star > n) {
    throw ConfigError("n_star must lie in 1.." + std::to_string(n));
  }
  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < N; ++j) {
    const auto row = ds.row(j);
    for (int i = 0; i < n; ++i) mean[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i)];
  }
  for (double& m : mean) m /= N;

  const Ranking overall = rank_vector(std::span<const double>(mean));
  const std::vector<int> by_rank = overall.order();
  std::vector<int> chosen(by_rank.begin(), by_rank.begin() + n_star);

  PosteriorSummary s;
  std::vector<int> ranks(static_cast<std::size_t>(n_star));
  std::iota(ranks.begin(), ranks.end(), 1);
  for (int item : chosen) s.x_bar.push_back(mean[static_cast<std::size_t>(item)]);
  s.hps = ItemSet(chosen, n);
  s.a_hat = ItemSet(std::move(chosen), n);
  s.rho_hat = Ranking(std::move(ranks));
  return s;
}

}  // namespace lowbmm
