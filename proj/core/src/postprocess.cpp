#include "lowbmm/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lowbmm/error.hpp"

namespace lowbmm {

SelectionFrequencies selection_frequencies(const PosteriorSamples& samples) {
  if (samples.empty()) throw DomainError("no posterior draws to summarize");
  SelectionFrequencies out;
  out.draws = samples.size();
  out.counts.assign(static_cast<std::size_t>(samples.n_items()), 0);
  for (std::size_t d = 0; d < samples.size(); ++d) {
    for (int item : samples.items(d)) ++out.counts[static_cast<std::size_t>(item)];
  }
  out.w_bar.resize(out.counts.size());
  for (std::size_t i = 0; i < out.counts.size(); ++i) {
    out.w_bar[i] = static_cast<double>(out.counts[i]) / static_cast<double>(out.draws);
  }
  return out;
}

ItemSet highest_probability_set(const SelectionFrequencies& w, int n_star, int k) {
  const int n = static_cast<int>(w.w_bar.size());
  if (k < n_star || k > n) {
    throw ConfigError("HPS size k must lie in " + std::to_string(n_star) + ".." +
                      std::to_string(n) + " (got " + std::to_string(k) + ")");
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  // Counts order exactly like w_bar and avoid floating-point ties.
  auto key = [&](int i) {
    return w.counts.empty() ? w.w_bar[static_cast<std::size_t>(i)]
                            : static_cast<double>(w.counts[static_cast<std::size_t>(i)]);
  };
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) > key(b); });
  idx.resize(static_cast<std::size_t>(k));
  return ItemSet(std::move(idx), n);
}

int default_hps_size(const SelectionFrequencies& w, int n_star) {
  const auto positive = static_cast<int>(
      std::count_if(w.w_bar.begin(), w.w_bar.end(), [](double x) { return x > 0.0; }));
  return std::max(positive, n_star);
}

namespace {

struct RankSums {
  std::vector<std::int64_t> counts;
  std::vector<double> sums;
};

RankSums rank_sums(const PosteriorSamples& samples) {
  RankSums rs;
  rs.counts.assign(static_cast<std::size_t>(samples.n_items()), 0);
  rs.sums.assign(static_cast<std::size_t>(samples.n_items()), 0.0);
  for (std::size_t d = 0; d < samples.size(); ++d) {
    const auto items = samples.items(d);
    const auto ranks = samples.ranks(d);
    for (std::size_t k = 0; k < items.size(); ++k) {
      ++rs.counts[static_cast<std::size_t>(items[k])];
      rs.sums[static_cast<std::size_t>(items[k])] += ranks[k];
    }
  }
  return rs;
}

}  // namespace

PosteriorSummary posterior_point_estimates(const PosteriorSamples& samples, int k) {
  const SelectionFrequencies w = selection_frequencies(samples);
  const int n_star = samples.n_star();
  PosteriorSummary s;
  s.hps = highest_probability_set(w, n_star, k);
  const RankSums rs = rank_sums(samples);
  s.x_bar.resize(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    const auto item = static_cast<std::size_t>(s.hps[p]);
    if (rs.counts[item] == 0) {
      throw DomainError("item '" + samples.item_ids()[item] +
                        "' in the highest probability set was never selected; use a smaller k");
    }
    s.x_bar[static_cast<std::size_t>(p)] = rs.sums[item] / static_cast<double>(rs.counts[item]);
  }
  // Order hps positions by x_bar, ties by item index.
  std::vector<int> pos(static_cast<std::size_t>(k));
  std::iota(pos.begin(), pos.end(), 0);
  std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) {
    const double xa = s.x_bar[static_cast<std::size_t>(a)];
    const double xb = s.x_bar[static_cast<std::size_t>(b)];
    if (xa != xb) return xa < xb;
    return s.hps[a] < s.hps[b];
  });
  std::vector<int> selected;
  std::vector<int> ranks;
  for (int r = 0; r < n_star; ++r) {
    selected.push_back(s.hps[pos[static_cast<std::size_t>(r)]]);
    ranks.push_back(r + 1);
  }
  s.a_hat = ItemSet(std::move(selected), samples.n_items());
  s.rho_hat = Ranking(std::move(ranks));
  return s;
}

PosteriorSummary posterior_point_estimates(const PosteriorSamples& samples) {
  return posterior_point_estimates(
      samples, default_hps_size(selection_frequencies(samples), samples.n_star()));
}

std::vector<std::optional<double>> topk_inclusion_probabilities(const PosteriorSamples& samples,
                                                                int K) {
  if (K < 1 || K > samples.n_star()) {
    throw ConfigError("top-K size must lie in 1.." + std::to_string(samples.n_star()));
  }
  std::vector<std::int64_t> included(static_cast<std::size_t>(samples.n_items()), 0);
  std::vector<std::int64_t> top(included.size(), 0);
  for (std::size_t d = 0; d < samples.size(); ++d) {
    const auto items = samples.items(d);
    const auto ranks = samples.ranks(d);
    for (std::size_t k = 0; k < items.size(); ++k) {
      ++included[static_cast<std::size_t>(items[k])];
      if (ranks[k] <= K) ++top[static_cast<std::size_t>(items[k])];
    }
  }
  std::vector<std::optional<double>> out(included.size());
  for (std::size_t i = 0; i < included.size(); ++i) {
    if (included[i] > 0) out[i] = static_cast<double>(top[i]) / static_cast<double>(included[i]);
  }
  return out;
}

ItemSet top_probability_selection(const PosteriorSamples& samples, const PosteriorSummary& summary,
                                  int K, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("cut-off c must lie in [0, 1]");
  const auto probs = topk_inclusion_probabilities(samples, K);
  std::vector<int> out;
  for (int item : summary.a_hat.members()) {
    const auto& p = probs[static_cast<std::size_t>(item)];
    if (p && *p > c) out.push_back(item);
  }
  return ItemSet(std::move(out), samples.n_items());
}

std::vector<double> rank_marginals(const PosteriorSamples& samples) {
  const auto n_star = static_cast<std::size_t>(samples.n_star());
  std::vector<double> out(static_cast<std::size_t>(samples.n_items()) * n_star, 0.0);
  std::vector<std::int64_t> included(static_cast<std::size_t>(samples.n_items()), 0);
  for (std::size_t d = 0; d < samples.size(); ++d) {
    const auto items = samples.items(d);
    const auto ranks = samples.ranks(d);
    for (std::size_t k = 0; k < items.size(); ++k) {
      const auto item = static_cast<std::size_t>(items[k]);
      ++included[item];
      out[item * n_star + static_cast<std::size_t>(ranks[k] - 1)] += 1.0;
    }
  }
  for (std::size_t i = 0; i < included.size(); ++i) {
    if (included[i] == 0) continue;
    for (std::size_t r = 0; r < n_star; ++r) {
      out[i * n_star + r] /= static_cast<double>(included[i]);
    }
  }
  return out;
}

namespace {

// a_hat in rho_hat order, then the rest of the hps by x_bar.
std::vector<int> plot_order(const PosteriorSummary& summary) {
  std::vector<int> order = summary.a_hat.order_by(summary.rho_hat);
  std::vector<int> rest;
  for (int p = 0; p < summary.hps.size(); ++p) {
    if (!summary.a_hat.contains(summary.hps[p])) rest.push_back(p);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
    const double xa = summary.x_bar[static_cast<std::size_t>(a)];
    const double xb = summary.x_bar[static_cast<std::size_t>(b)];
    if (xa != xb) return xa < xb;
    return summary.hps[a] < summary.hps[b];
  });
  for (int p : rest) order.push_back(summary.hps[p]);
  return order;
}

}  // namespace

std::vector<HeatplotCell> heatplot_cells(const PosteriorSamples& samples,
                                         const PosteriorSummary& summary) {
  const SelectionFrequencies w = selection_frequencies(samples);
  const std::vector<double> marg = rank_marginals(samples);
  const int n_star = samples.n_star();
  std::vector<HeatplotCell> cells;
  int position = 0;
  for (int item : plot_order(summary)) {
    ++position;
    for (int r = 1; r <= n_star; ++r) {
      cells.push_back(HeatplotCell{
          position, item, r,
          marg[static_cast<std::size_t>(item) * static_cast<std::size_t>(n_star) +
               static_cast<std::size_t>(r - 1)],
          w.w_bar[static_cast<std::size_t>(item)]});
    }
  }
  return cells;
}

std::vector<TracePoint> trace_points(const PosteriorSamples& samples,
                                     const PosteriorSummary& summary, int top) {
  std::vector<int> items = summary.a_hat.order_by(summary.rho_hat);
  if (top >= 0 && static_cast<std::size_t>(top) < items.size()) {
    items.resize(static_cast<std::size_t>(top));
  }
  std::vector<TracePoint> out;
  for (std::size_t d = 0; d < samples.size(); ++d) {
    const auto di = samples.items(d);
    const auto dr = samples.ranks(d);
    for (int item : items) {
      auto it = std::lower_bound(di.begin(), di.end(), item);
      if (it != di.end() && *it == item) {
        out.push_back(TracePoint{samples.chain(d), samples.iteration(d), item,
                                 dr[static_cast<std::size_t>(it - di.begin())]});
      }
    }
  }
  return out;
}

std::vector<ViolinPoint> violin_points(const PosteriorSamples& samples, const std::vector<int>& grid) {
  std::vector<ViolinPoint> out;
  for (int K : grid) {
    const auto probs = topk_inclusion_probabilities(samples, K);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i]) out.push_back(ViolinPoint{K, static_cast<int>(i), *probs[i]});
    }
  }
  return out;
}

std::vector<int> default_k_grid(int n_star) {
  std::vector<int> grid;
  if (n_star >= 25) {
    for (int K : {25, 50, 75, 100}) {
      if (K <= n_star) grid.push_back(K);
    }
    return grid;
  }
  for (int q = 1; q <= 4; ++q) {
    const int K = std::max(1, static_cast<int>(std::lround(n_star * q / 4.0)));
    if (grid.empty() || grid.back() != K) grid.push_back(K);
  }
  return grid;
}

}  // namespace lowbmm
