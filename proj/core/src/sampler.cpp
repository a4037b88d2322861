#include "lowbmm/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "lowbmm/error.hpp"

namespace lowbmm {

SamplerConfig SamplerConfig::defaults(int n_star, double alpha, std::int64_t iterations) {
  SamplerConfig c;
  c.alpha = alpha;
  c.n_star = n_star;
  c.leap = std::max(1, static_cast<int>(std::lround(n_star / 5.0)));
  c.swap = 1;
  c.iterations = iterations;
  c.burn_in = 0;
  c.thin = iterations <= 100000 ? 1 : 10;
  return c;
}

void SamplerConfig::validate(int n_items) const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be positive and finite");
  if (n_star < 1 || n_star > n_items) {
    fail("n_star must lie in 1.." + std::to_string(n_items) + " (got " + std::to_string(n_star) +
         ")");
  }
  if (n_star >= 2 && (leap < 1 || leap > n_star - 1)) {
    fail("leap size l must lie in 1.." + std::to_string(n_star - 1) + " (got " +
         std::to_string(leap) + ")");
  }
  if (n_star < n_items) {
    const int max_swap = std::min(n_star, n_items - n_star);
    if (swap < 1 || swap > max_swap) {
      fail("swap size L must lie in 1.." + std::to_string(max_swap) + " (got " +
           std::to_string(swap) + ")");
    }
  }
  if (iterations < 1) fail("iterations M must be at least 1");
  if (burn_in < 0 || burn_in >= iterations) fail("burn-in must satisfy 0 <= burn_in < M");
  if (thin < 1) fail("thinning stride must be at least 1");
}

// ---------------------------------------------------------------------------
// PosteriorSamples

PosteriorSamples::PosteriorSamples(int n_items, int n_star, std::vector<std::string> item_ids)
    : n_items_(n_items), n_star_(n_star), item_ids_(std::move(item_ids)) {
  if (static_cast<int>(item_ids_.size()) != n_items_) {
    throw DimensionError("posterior samples: item id count differs from item count");
  }
}

void PosteriorSamples::add_draw(int chain, std::int64_t iteration, std::span<const int> items,
                                std::span<const int> ranks) {
  if (static_cast<int>(items.size()) != n_star_ || ranks.size() != items.size()) {
    throw DimensionError("posterior draw must hold exactly n_star items and ranks");
  }
  std::vector<int> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return items[static_cast<std::size_t>(a)] < items[static_cast<std::size_t>(b)];
  });
  for (int k : idx) {
    items_.push_back(items[static_cast<std::size_t>(k)]);
    ranks_.push_back(ranks[static_cast<std::size_t>(k)]);
  }
  iterations_.push_back(iteration);
  chains_.push_back(chain);
}

void PosteriorSamples::append(const PosteriorSamples& other) {
  if (other.n_items_ != n_items_ || other.n_star_ != n_star_) {
    throw DimensionError("cannot merge posterior samples of different shapes");
  }
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  ranks_.insert(ranks_.end(), other.ranks_.begin(), other.ranks_.end());
  iterations_.insert(iterations_.end(), other.iterations_.begin(), other.iterations_.end());
  chains_.insert(chains_.end(), other.chains_.begin(), other.chains_.end());
}

// ---------------------------------------------------------------------------
// Reference (non-incremental) operations

std::int64_t total_restricted_distance(const RankingDataset& data, const ItemSet& aset,
                                       const Ranking& rho) {
  if (aset.size() != rho.size()) {
    throw DimensionError("relevant set size differs from consensus dimension");
  }
  std::int64_t total = 0;
  for (int j = 0; j < data.assessors(); ++j) {
    total += footrule(restrict_to(data.ranking(j), aset), rho);
  }
  return total;
}

double log_acceptance(double log_proposal_ratio, std::int64_t current_distance,
                      std::int64_t proposed_distance, double alpha, int n_star) {
  return log_proposal_ratio -
         (alpha / n_star) * static_cast<double>(proposed_distance - current_distance);
}

namespace {

bool metropolis(double log_ratio, Rng& rng) {
  // Always consume one uniform so the random stream does not depend on the
  // outcome.
  const double u = uniform01(rng);
  return log_ratio >= 0.0 || std::log(u) < log_ratio;
}

}  // namespace

Ranking accept_rho(const Ranking& rho, const LeapShiftProposal& prop, const RankingDataset& data,
                   const ItemSet& aset, double alpha, Rng& rng) {
  const std::int64_t current = total_restricted_distance(data, aset, rho);
  const std::int64_t proposed = total_restricted_distance(data, aset, prop.proposed);
  const double log_ratio =
      log_acceptance(prop.log_backward - prop.log_forward, current, proposed, alpha, rho.size());
  return metropolis(log_ratio, rng) ? prop.proposed : rho;
}

SetProposal propose_aset(const ItemSet& aset, const Ranking& rho, int swap, Rng& rng) {
  const int n_star = aset.size();
  const std::vector<int> outside = aset.complement();
  const int max_swap = std::min(n_star, static_cast<int>(outside.size()));
  if (swap < 1 || swap > max_swap) {
    throw ConfigError("swap size L must lie in 1.." + std::to_string(max_swap));
  }
  if (rho.size() != n_star) throw DimensionError("consensus dimension differs from set size");

  const std::vector<int> out_slots = sample_without_replacement(rng, n_star, swap);
  const std::vector<int> in_idx =
      sample_without_replacement(rng, static_cast<int>(outside.size()), swap);
  std::vector<int> vacated;
  for (int s : out_slots) vacated.push_back(rho[s]);
  std::shuffle(vacated.begin(), vacated.end(), rng);

  std::vector<int> members = aset.vector();
  std::vector<int> ranks = rho.vector();
  SetProposal p;
  for (int t = 0; t < swap; ++t) {
    const auto slot = static_cast<std::size_t>(out_slots[static_cast<std::size_t>(t)]);
    const int incoming = outside[static_cast<std::size_t>(in_idx[static_cast<std::size_t>(t)])];
    p.removed.push_back(members[slot]);
    p.added.push_back(incoming);
    members[slot] = incoming;
    ranks[slot] = vacated[static_cast<std::size_t>(t)];
  }
  p.aset = ItemSet(std::move(members), aset.universe());
  p.rho = Ranking(std::move(ranks));
  return p;
}

std::pair<ItemSet, Ranking> accept_aset(const ItemSet& aset, const Ranking& rho,
                                        const SetProposal& prop, const RankingDataset& data,
                                        double alpha, Rng& rng) {
  const std::int64_t current = total_restricted_distance(data, aset, rho);
  const std::int64_t proposed = total_restricted_distance(data, prop.aset, prop.rho);
  const double log_ratio = log_acceptance(0.0, current, proposed, alpha, aset.size());
  if (metropolis(log_ratio, rng)) return {prop.aset, prop.rho};
  return {aset, rho};
}

// ---------------------------------------------------------------------------
// LowBmmChain

namespace {

ChainState random_state(int n_items, int n_star, Rng& rng) {
  ChainState s;
  s.aset = ItemSet(sample_without_replacement(rng, n_items, n_star), n_items);
  s.rho = Ranking(random_permutation(rng, n_star));
  return s;
}

}  // namespace

LowBmmChain::LowBmmChain(const RankingDataset& data, const SamplerConfig& config, Rng rng)
    : config_(config), rng_(std::move(rng)) {
  config_.validate(data.items());
  load_data(data);
  init_state(random_state(n_items_, config_.n_star, rng_));
}

LowBmmChain::LowBmmChain(const RankingDataset& data, const SamplerConfig& config, Rng rng,
                         const ChainState& start)
    : config_(config), rng_(std::move(rng)) {
  config_.validate(data.items());
  load_data(data);
  if (start.aset.universe() != n_items_ || start.aset.size() != config_.n_star ||
      start.rho.size() != config_.n_star) {
    throw DimensionError("initial chain state does not match the data and n_star");
  }
  init_state(start);
}

void LowBmmChain::load_data(const RankingDataset& data) {
  n_items_ = data.items();
  assessors_ = data.assessors();
  const auto N = static_cast<std::size_t>(assessors_);
  by_item_.resize(static_cast<std::size_t>(n_items_) * N);
  for (int j = 0; j < assessors_; ++j) {
    for (int i = 0; i < n_items_; ++i) {
      by_item_[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)] = data.rank(j, i);
    }
  }
}

void LowBmmChain::init_state(const ChainState& start) {
  n_star_ = config_.n_star;
  scale_ = config_.alpha / n_star_;
  set_ = start.aset.vector();
  rho_ = start.rho.vector();
  iteration_ = start.iteration;
  order_.assign(static_cast<std::size_t>(n_star_), 0);
  for (int k = 0; k < n_star_; ++k) order_[static_cast<std::size_t>(rho_[static_cast<std::size_t>(k)] - 1)] = k;
  slot_of_.assign(static_cast<std::size_t>(n_items_), -1);
  for (int k = 0; k < n_star_; ++k) slot_of_[static_cast<std::size_t>(set_[static_cast<std::size_t>(k)])] = k;
  outside_.clear();
  outside_pos_.assign(static_cast<std::size_t>(n_items_), -1);
  for (int i = 0; i < n_items_; ++i) {
    if (slot_of_[static_cast<std::size_t>(i)] < 0) {
      outside_pos_[static_cast<std::size_t>(i)] = static_cast<int>(outside_.size());
      outside_.push_back(i);
    }
  }
  rebuild_restricted();
}

void LowBmmChain::rebuild_restricted() {
  const auto N = static_cast<std::size_t>(assessors_);
  restricted_.assign(static_cast<std::size_t>(n_star_) * N, 1);
  scratch_.assign(restricted_.size(), 0);
  total_ = 0;
  for (int k = 0; k < n_star_; ++k) {
    const int* xk = &by_item_[static_cast<std::size_t>(set_[static_cast<std::size_t>(k)]) * N];
    int* dst = &restricted_[static_cast<std::size_t>(k) * N];
    for (int k2 = 0; k2 < n_star_; ++k2) {
      const int* x2 = &by_item_[static_cast<std::size_t>(set_[static_cast<std::size_t>(k2)]) * N];
      for (std::size_t j = 0; j < N; ++j) dst[j] += x2[j] < xk[j];
    }
    const int r = rho_[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < N; ++j) total_ += std::abs(dst[j] - r);
  }
}

std::int64_t LowBmmChain::recompute_total_distance() const {
  std::int64_t total = 0;
  std::vector<int> sub(static_cast<std::size_t>(n_star_));
  for (int j = 0; j < assessors_; ++j) {
    for (int k = 0; k < n_star_; ++k) {
      sub[static_cast<std::size_t>(k)] = data_rank(set_[static_cast<std::size_t>(k)], j);
    }
    const Ranking restricted = rank_vector(std::span<const int>(sub));
    total += footrule(restricted.values(), std::span<const int>(rho_));
  }
  return total;
}

void LowBmmChain::check_distance(const char* where) const {
  if (!is_permutation(rho_)) {
    throw DomainError(std::string("chain consensus is not a permutation after ") + where);
  }
  [[maybe_unused]] const ItemSet members(set_, n_items_);  // throws on duplicates
  const std::int64_t full = recompute_total_distance();
  if (full != total_) {
    throw DomainError(std::string("incremental distance ") + std::to_string(total_) +
                      " disagrees with full recomputation " + std::to_string(full) + " after " +
                      where);
  }
}

bool LowBmmChain::update_rho() {
  if (n_star_ < 2) return false;
  ++attempted_rho_;
  const LeapShiftMove mv = draw_leap_shift(rho_, config_.leap, rng_);
  const auto N = static_cast<std::size_t>(assessors_);

  std::int64_t delta = 0;
  {
    const int* rr = &restricted_[static_cast<std::size_t>(mv.item) * N];
    for (std::size_t j = 0; j < N; ++j) {
      delta += std::abs(rr[j] - mv.to) - std::abs(rr[j] - mv.from);
    }
  }
  const int shift = mv.to > mv.from ? -1 : 1;
  const int lo = std::min(mv.from, mv.to);
  const int hi = std::max(mv.from, mv.to);
  for (int r = lo; r <= hi; ++r) {
    if (r == mv.from) continue;
    const int slot = order_[static_cast<std::size_t>(r - 1)];
    const int* rr = &restricted_[static_cast<std::size_t>(slot) * N];
    const int nr = r + shift;
    for (std::size_t j = 0; j < N; ++j) delta += std::abs(rr[j] - nr) - std::abs(rr[j] - r);
  }

  const double log_ratio =
      leap_shift_log_ratio(mv.from, mv.to, n_star_, config_.leap) - scale_ * static_cast<double>(delta);
  if (!metropolis(log_ratio, rng_)) return false;
  apply_leap_shift(rho_, order_, mv);
  total_ += delta;
  ++accepted_rho_;
  if (config_.verify_distances) check_distance("consensus update");
  return true;
}

bool LowBmmChain::update_aset() {
  if (outside_.empty()) return false;
  ++attempted_aset_;
  const int L = config_.swap;
  const auto N = static_cast<std::size_t>(assessors_);

  const std::vector<int> out_slots = sample_without_replacement(rng_, n_star_, L);
  const std::vector<int> in_idx =
      sample_without_replacement(rng_, static_cast<int>(outside_.size()), L);
  std::vector<int> in_items(static_cast<std::size_t>(L));
  std::vector<int> out_items(static_cast<std::size_t>(L));
  std::vector<int> new_ranks(static_cast<std::size_t>(L));
  for (int t = 0; t < L; ++t) {
    in_items[static_cast<std::size_t>(t)] = outside_[static_cast<std::size_t>(in_idx[static_cast<std::size_t>(t)])];
    out_items[static_cast<std::size_t>(t)] = set_[static_cast<std::size_t>(out_slots[static_cast<std::size_t>(t)])];
    new_ranks[static_cast<std::size_t>(t)] = rho_[static_cast<std::size_t>(out_slots[static_cast<std::size_t>(t)])];
  }
  std::shuffle(new_ranks.begin(), new_ranks.end(), rng_);

  std::vector<char> leaving(static_cast<std::size_t>(n_star_), 0);
  for (int s : out_slots) leaving[static_cast<std::size_t>(s)] = 1;

  std::int64_t proposed = 0;
  // Retained members: their restricted rank loses the outgoing items ranked
  // above them and gains the incoming ones.
  for (int k = 0; k < n_star_; ++k) {
    if (leaving[static_cast<std::size_t>(k)]) continue;
    const int* rr = &restricted_[static_cast<std::size_t>(k) * N];
    const int* xk = &by_item_[static_cast<std::size_t>(set_[static_cast<std::size_t>(k)]) * N];
    int* dst = &scratch_[static_cast<std::size_t>(k) * N];
    std::copy(rr, rr + N, dst);
    for (int t = 0; t < L; ++t) {
      const int* xo = &by_item_[static_cast<std::size_t>(out_items[static_cast<std::size_t>(t)]) * N];
      const int* xi = &by_item_[static_cast<std::size_t>(in_items[static_cast<std::size_t>(t)]) * N];
      for (std::size_t j = 0; j < N; ++j) {
        dst[j] += static_cast<int>(xi[j] < xk[j]) - static_cast<int>(xo[j] < xk[j]);
      }
    }
    const int r = rho_[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < N; ++j) proposed += std::abs(dst[j] - r);
  }
  // Incoming members: count the proposed members ranked above them.
  for (int t = 0; t < L; ++t) {
    const int slot = out_slots[static_cast<std::size_t>(t)];
    const int* xi = &by_item_[static_cast<std::size_t>(in_items[static_cast<std::size_t>(t)]) * N];
    int* dst = &scratch_[static_cast<std::size_t>(slot) * N];
    std::fill(dst, dst + N, 1);
    for (int k = 0; k < n_star_; ++k) {
      if (leaving[static_cast<std::size_t>(k)]) continue;
      const int* xk = &by_item_[static_cast<std::size_t>(set_[static_cast<std::size_t>(k)]) * N];
      for (std::size_t j = 0; j < N; ++j) dst[j] += xk[j] < xi[j];
    }
    for (int t2 = 0; t2 < L; ++t2) {
      if (t2 == t) continue;
      const int* x2 = &by_item_[static_cast<std::size_t>(in_items[static_cast<std::size_t>(t2)]) * N];
      for (std::size_t j = 0; j < N; ++j) dst[j] += x2[j] < xi[j];
    }
    const int r = new_ranks[static_cast<std::size_t>(t)];
    for (std::size_t j = 0; j < N; ++j) proposed += std::abs(dst[j] - r);
  }

  const double log_ratio = log_acceptance(0.0, total_, proposed, config_.alpha, n_star_);
  if (!metropolis(log_ratio, rng_)) return false;

  std::swap(restricted_, scratch_);
  for (int t = 0; t < L; ++t) {
    const int slot = out_slots[static_cast<std::size_t>(t)];
    const int in = in_items[static_cast<std::size_t>(t)];
    const int out = out_items[static_cast<std::size_t>(t)];
    const int r = new_ranks[static_cast<std::size_t>(t)];
    set_[static_cast<std::size_t>(slot)] = in;
    rho_[static_cast<std::size_t>(slot)] = r;
    order_[static_cast<std::size_t>(r - 1)] = slot;
    slot_of_[static_cast<std::size_t>(in)] = slot;
    slot_of_[static_cast<std::size_t>(out)] = -1;
    const int pos = outside_pos_[static_cast<std::size_t>(in)];
    outside_[static_cast<std::size_t>(pos)] = out;
    outside_pos_[static_cast<std::size_t>(out)] = pos;
    outside_pos_[static_cast<std::size_t>(in)] = -1;
  }
  total_ = proposed;
  ++accepted_aset_;
  if (config_.verify_distances) check_distance("relevant-set update");
  return true;
}

void LowBmmChain::step() {
  update_rho();
  update_aset();
  ++iteration_;
}

ChainState LowBmmChain::state() const {
  return ChainState{ItemSet(set_, n_items_), Ranking(rho_), iteration_};
}

// ---------------------------------------------------------------------------
// Drivers

PosteriorSamples run_chain(const RankingDataset& data, const SamplerConfig& config,
                           const RunOptions& options) {
  config.validate(data.items());
  LowBmmChain chain(data, config,
                    Rng(derive_seed(config.seed, static_cast<std::uint64_t>(options.chain_index))));
  PosteriorSamples out(data.items(), config.n_star, data.item_ids());
  out.config = config;
  if (config.record_distance_trace) out.distance_trace.reserve(static_cast<std::size_t>(config.iterations));

  for (std::int64_t m = 1; m <= config.iterations; ++m) {
    chain.step();
    if (config.record_distance_trace) {
      out.distance_trace.push_back(static_cast<double>(chain.total_distance()));
    }
    if (m > config.burn_in && (m - config.burn_in) % config.thin == 0) {
      if (options.store_draws) {
        out.add_draw(options.chain_index, m, chain.set_items(), chain.set_ranks());
      }
      if (options.sink) options.sink(options.chain_index, m, chain.set_items(), chain.set_ranks());
    }
    if (options.progress && options.progress_every > 0 && m % options.progress_every == 0) {
      options.progress(m);
    }
  }
  out.acceptance_rho = chain.attempted_rho() > 0
                           ? static_cast<double>(chain.accepted_rho()) /
                                 static_cast<double>(chain.attempted_rho())
                           : 0.0;
  out.acceptance_aset = chain.attempted_aset() > 0
                            ? static_cast<double>(chain.accepted_aset()) /
                                  static_cast<double>(chain.attempted_aset())
                            : 0.0;
  return out;
}

PosteriorSamples run_chains(const RankingDataset& data, const SamplerConfig& config, int chains,
                            int threads) {
  if (chains < 1) throw ConfigError("number of chains must be at least 1");
  config.validate(data.items());
  std::vector<PosteriorSamples> results(static_cast<std::size_t>(chains));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next++; c < chains; c = next++) {
      RunOptions opts;
      opts.chain_index = c;
      results[static_cast<std::size_t>(c)] = run_chain(data, config, opts);
    }
  };
  const int workers = std::clamp(threads, 1, chains);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  PosteriorSamples merged = std::move(results.front());
  double acc_rho = merged.acceptance_rho;
  double acc_aset = merged.acceptance_aset;
  for (std::size_t c = 1; c < results.size(); ++c) {
    merged.append(results[c]);
    acc_rho += results[c].acceptance_rho;
    acc_aset += results[c].acceptance_aset;
  }
  merged.acceptance_rho = acc_rho / chains;
  merged.acceptance_aset = acc_aset / chains;
  merged.chain_count = chains;
  return merged;
}

}  // namespace lowbmm
