#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lowbmm/perm.hpp"

namespace lowbmm {

// Mallows(rho, alpha) with footrule distance:
//   P(r) proportional to exp(-(alpha / m) * footrule(r, rho)).
// The partition function is never needed: alpha stays fixed, so it cancels.
struct MallowsParams {
  Ranking rho;
  double alpha = 1.0;

  int dimension() const noexcept { return rho.size(); }
  void validate() const;  // throws ConfigError
};

// Unnormalized log density: -(alpha / m) * footrule(r, rho).
double log_kernel(const Ranking& r, const MallowsParams& p);

struct MallowsChainOptions {
  // Unset values resolve to 100*m burn-in steps, a stride of 10*m steps and
  // a leap size of max(1, round(m/5)).
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> thin;
  std::optional<int> leap;

  std::int64_t resolved_burn_in(int m) const { return burn_in.value_or(100LL * m); }
  std::int64_t resolved_thin(int m) const { return thin.value_or(10LL * m); }
  int resolved_leap(int m) const;
};

// `count` approximately independent draws from Mallows(p) produced by one
// Metropolis-Hastings chain with leap-and-shift proposals, started at rho.
// The first burn_in states are discarded, then every thin-th state is
// emitted. Deterministic given `seed`.
std::vector<Ranking> sample_mallows(const MallowsParams& p, int count, std::uint64_t seed,
                                    const MallowsChainOptions& options = {});

}  // namespace lowbmm
