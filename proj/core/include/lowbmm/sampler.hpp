#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lowbmm/datagen.hpp"
#include "lowbmm/leap_shift.hpp"
#include "lowbmm/perm.hpp"
#include "lowbmm/random.hpp"

namespace lowbmm {

// Tuning knobs of the lowBMM Metropolis-Hastings chain.
struct SamplerConfig {
  double alpha = 1.0;
  int n_star = 1;
  int leap = 1;                  // l: maximum rank leap of the consensus proposal
  int swap = 1;                  // L: items exchanged per relevant-set proposal
  std::int64_t iterations = 1000;  // M
  std::int64_t burn_in = 0;
  std::int64_t thin = 1;
  std::uint64_t seed = 0;

  // Recompute the total distance from scratch after every transition and
  // throw if the incremental bookkeeping disagrees. Slow; for testing.
  bool verify_distances = false;
  // Record the total restricted distance after every iteration.
  bool record_distance_trace = false;

  // l = max(1, round(n*/5)), L = 1, thinning 1 up to 1e5 iterations else 10.
  static SamplerConfig defaults(int n_star, double alpha, std::int64_t iterations);

  // Throws ConfigError describing the first violated constraint.
  void validate(int n_items) const;
};

// The joint state (rho, A*): rho[k] is the consensus rank of aset[k].
struct ChainState {
  ItemSet aset;
  Ranking rho;
  std::int64_t iteration = 0;
};

// Post-burn-in draws. Each draw stores its n* items sorted ascending with
// their consensus ranks aligned, so draws from different chains compare
// directly.
class PosteriorSamples {
 public:
  PosteriorSamples() = default;
  PosteriorSamples(int n_items, int n_star, std::vector<std::string> item_ids);

  int n_items() const noexcept { return n_items_; }
  int n_star() const noexcept { return n_star_; }
  std::size_t size() const noexcept { return iterations_.size(); }
  bool empty() const noexcept { return iterations_.empty(); }

  std::span<const int> items(std::size_t draw) const {
    return std::span<const int>(items_).subspan(draw * static_cast<std::size_t>(n_star_),
                                                static_cast<std::size_t>(n_star_));
  }
  std::span<const int> ranks(std::size_t draw) const {
    return std::span<const int>(ranks_).subspan(draw * static_cast<std::size_t>(n_star_),
                                                static_cast<std::size_t>(n_star_));
  }
  std::int64_t iteration(std::size_t draw) const { return iterations_[draw]; }
  int chain(std::size_t draw) const { return chains_[draw]; }

  // `items` need not be sorted; ranks must be aligned with them.
  void add_draw(int chain, std::int64_t iteration, std::span<const int> items,
                std::span<const int> ranks);

  // Appends all draws of `other` (same n, n*).
  void append(const PosteriorSamples& other);

  const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }

  double acceptance_rho = 0.0;
  double acceptance_aset = 0.0;
  SamplerConfig config;
  int chain_count = 1;
  std::vector<double> distance_trace;

  friend bool operator==(const PosteriorSamples& a, const PosteriorSamples& b) {
    return a.n_items_ == b.n_items_ && a.n_star_ == b.n_star_ && a.items_ == b.items_ &&
           a.ranks_ == b.ranks_ && a.iterations_ == b.iterations_ && a.chains_ == b.chains_;
  }

 private:
  int n_items_ = 0;
  int n_star_ = 0;
  std::vector<std::string> item_ids_;
  std::vector<int> items_;
  std::vector<int> ranks_;
  std::vector<std::int64_t> iterations_;
  std::vector<int> chains_;
};

// Sum over assessors of footrule(restrict(R_j, aset), rho). Straight from the
// definition; the chain uses incremental updates validated against this.
std::int64_t total_restricted_distance(const RankingDataset& data, const ItemSet& aset,
                                       const Ranking& rho);

// Log acceptance ratio of a consensus move: log proposal ratio minus
// (alpha / n*) times the change in total distance.
double log_acceptance(double log_proposal_ratio, std::int64_t current_distance,
                      std::int64_t proposed_distance, double alpha, int n_star);

// Metropolis-Hastings decision for a consensus proposal, evaluated on the data
// restricted to `aset`. Returns the accepted consensus (rho or prop.proposed).
Ranking accept_rho(const Ranking& rho, const LeapShiftProposal& prop, const RankingDataset& data,
                   const ItemSet& aset, double alpha, Rng& rng);

struct SetProposal {
  ItemSet aset;
  Ranking rho;
  std::vector<int> removed;  // items leaving the set
  std::vector<int> added;    // items entering, in the slots of `removed`
};

// Swaps `swap` uniformly chosen members out for as many uniformly chosen
// non-members. Retained items keep their ranks; the vacated ranks are dealt
// to the incoming items in uniformly random order.
SetProposal propose_aset(const ItemSet& aset, const Ranking& rho, int swap, Rng& rng);

// Metropolis-Hastings decision for a set proposal (symmetric proposal, so a
// plain likelihood ratio).
std::pair<ItemSet, Ranking> accept_aset(const ItemSet& aset, const Ranking& rho,
                                        const SetProposal& prop, const RankingDataset& data,
                                        double alpha, Rng& rng);

// Optional per-draw callback for streaming draws to disk.
using DrawSink = std::function<void(int chain, std::int64_t iteration, std::span<const int> items,
                                    std::span<const int> ranks)>;

struct RunOptions {
  int chain_index = 0;
  bool store_draws = true;
  DrawSink sink;
  // Called every `progress_every` iterations when set.
  std::function<void(std::int64_t iteration)> progress;
  std::int64_t progress_every = 0;
};

// The alternating Metropolis-Hastings chain over (rho, A*). Keeps, per
// assessor, the ranks of the current set members restricted to the set, and
// updates the total distance incrementally.
class LowBmmChain {
 public:
  LowBmmChain(const RankingDataset& data, const SamplerConfig& config, Rng rng);
  // Starts from a given state instead of a uniform random one.
  LowBmmChain(const RankingDataset& data, const SamplerConfig& config, Rng rng,
              const ChainState& start);

  // One full iteration: consensus update, then relevant-set update.
  void step();
  bool update_rho();
  bool update_aset();

  ChainState state() const;
  std::span<const int> set_items() const noexcept { return set_; }
  std::span<const int> set_ranks() const noexcept { return rho_; }
  std::int64_t total_distance() const noexcept { return total_; }
  std::int64_t recompute_total_distance() const;
  std::int64_t iteration() const noexcept { return iteration_; }

  std::int64_t accepted_rho() const noexcept { return accepted_rho_; }
  std::int64_t accepted_aset() const noexcept { return accepted_aset_; }
  std::int64_t attempted_rho() const noexcept { return attempted_rho_; }
  std::int64_t attempted_aset() const noexcept { return attempted_aset_; }

 private:
  void load_data(const RankingDataset& data);
  void init_state(const ChainState& start);
  void rebuild_restricted();
  void check_distance(const char* where) const;
  int data_rank(int item, int assessor) const {
    return by_item_[static_cast<std::size_t>(item) * static_cast<std::size_t>(assessors_) +
                    static_cast<std::size_t>(assessor)];
  }

  SamplerConfig config_;
  Rng rng_;
  int n_items_ = 0;
  int assessors_ = 0;
  int n_star_ = 0;
  double scale_ = 0.0;  // alpha / n*

  std::vector<int> by_item_;     // data ranks, item-major
  std::vector<int> set_;         // slot -> item
  std::vector<int> rho_;         // slot -> consensus rank
  std::vector<int> order_;       // consensus rank - 1 -> slot
  std::vector<int> slot_of_;     // item -> slot or -1
  std::vector<int> outside_;     // items not in the set
  std::vector<int> outside_pos_;  // item -> index in outside_ or -1
  std::vector<int> restricted_;  // slot-major: restricted rank of set_[k] for assessor j
  std::vector<int> scratch_;     // proposal buffer, same layout
  std::int64_t total_ = 0;
  std::int64_t iteration_ = 0;

  std::int64_t accepted_rho_ = 0, attempted_rho_ = 0;
  std::int64_t accepted_aset_ = 0, attempted_aset_ = 0;
};

// Runs one chain for config.iterations iterations from a uniformly random
// (rho, A*), keeping draws after burn-in at the thinning stride.
PosteriorSamples run_chain(const RankingDataset& data, const SamplerConfig& config,
                           const RunOptions& options = {});

// Independent chains with seeds derived from config.seed, merged after their
// individual burn-in. Chains run on up to `threads` workers.
PosteriorSamples run_chains(const RankingDataset& data, const SamplerConfig& config, int chains,
                            int threads = 1);

}  // namespace lowbmm
