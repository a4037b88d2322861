#include "lowbmm/mallows.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "lowbmm/error.hpp"
#include "lowbmm/leap_shift.hpp"
#include "lowbmm/random.hpp"

namespace lowbmm {

void MallowsParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("Mallows scale alpha must be positive and finite");
  }
  if (rho.size() < 1) throw ConfigError("Mallows consensus must have at least one item");
}

double log_kernel(const Ranking& r, const MallowsParams& p) {
  if (r.size() != p.dimension()) {
    throw DimensionError("log_kernel: ranking dimension " + std::to_string(r.size()) +
                         " differs from consensus dimension " + std::to_string(p.dimension()));
  }
  return -(p.alpha / p.dimension()) * static_cast<double>(footrule(r, p.rho));
}

int MallowsChainOptions::resolved_leap(int m) const {
  if (leap) return *leap;
  return std::max(1, static_cast<int>(std::lround(m / 5.0)));
}

std::vector<Ranking> sample_mallows(const MallowsParams& p, int count, std::uint64_t seed,
                                    const MallowsChainOptions& options) {
  p.validate();
  const int m = p.dimension();
  const std::int64_t burn_in = options.resolved_burn_in(m);
  const std::int64_t thin = options.resolved_thin(m);
  const int leap = options.resolved_leap(m);
  if (count < 0) throw ConfigError("sample count must be non-negative");
  if (burn_in < 0) throw ConfigError("burn-in must be non-negative");
  if (thin < 1) throw ConfigError("thinning stride must be at least 1");
  if (leap < 1) throw ConfigError("leap size must be at least 1");

  std::vector<Ranking> out;
  out.reserve(static_cast<std::size_t>(count));
  if (m == 1) {
    for (int i = 0; i < count; ++i) out.push_back(p.rho);
    return out;
  }

  Rng rng(seed);
  const std::vector<int>& rho = p.rho.vector();
  std::vector<int> state = rho;
  std::vector<int> order = p.rho.order();
  const double scale = p.alpha / m;

  auto step = [&] {
    const LeapShiftMove mv = draw_leap_shift(state, leap, rng);
    // Footrule change over the items whose ranks move.
    std::int64_t delta = std::abs(mv.to - rho[static_cast<std::size_t>(mv.item)]) -
                         std::abs(mv.from - rho[static_cast<std::size_t>(mv.item)]);
    const int shift = mv.to > mv.from ? -1 : 1;
    const int lo = std::min(mv.from, mv.to);
    const int hi = std::max(mv.from, mv.to);
    for (int r = lo; r <= hi; ++r) {
      if (r == mv.from) continue;
      const int it = order[static_cast<std::size_t>(r - 1)];
      const int target = rho[static_cast<std::size_t>(it)];
      delta += std::abs(r + shift - target) - std::abs(r - target);
    }
    const double log_ratio =
        leap_shift_log_ratio(mv.from, mv.to, m, leap) - scale * static_cast<double>(delta);
    if (log_ratio >= 0.0 || std::log(uniform01(rng)) < log_ratio) {
      apply_leap_shift(state, order, mv);
    }
  };

  for (std::int64_t s = 0; s < burn_in; ++s) step();
  for (int i = 0; i < count; ++i) {
    for (std::int64_t s = 0; s < thin; ++s) step();
    out.emplace_back(state);
  }
  return out;
}

}  // namespace lowbmm
