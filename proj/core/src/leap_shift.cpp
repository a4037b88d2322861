#include "lowbmm/leap_shift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lowbmm/error.hpp"

namespace lowbmm {

int leap_support_size(int rank, int m, int l) {
  return std::min(m, rank + l) - std::max(1, rank - l);
}

double leap_shift_log_mass(int a, int b, int m, int l) {
  const double inv_m = 1.0 / m;
  double mass = inv_m / leap_support_size(a, m, l);
  if (std::abs(a - b) == 1) mass += inv_m / leap_support_size(b, m, l);
  return std::log(mass);
}

LeapShiftMove draw_leap_shift(std::span<const int> ranks, int l, Rng& rng) {
  const int m = static_cast<int>(ranks.size());
  if (m < 2) throw ConfigError("leap-and-shift needs at least two items");
  if (l < 1) throw ConfigError("leap size must be at least 1");
  LeapShiftMove move;
  move.item = uniform_index(rng, m);
  move.from = ranks[static_cast<std::size_t>(move.item)];
  const int lo = std::max(1, move.from - l);
  const int hi = std::min(m, move.from + l);
  int to = lo + uniform_index(rng, hi - lo);
  if (to >= move.from) ++to;
  move.to = to;
  return move;
}

void apply_leap_shift(std::vector<int>& ranks, std::vector<int>& order, const LeapShiftMove& move) {
  const bool track = !order.empty();
  if (!track) {
    for (auto& r : ranks) {
      if (move.to > move.from && r > move.from && r <= move.to) {
        --r;
      } else if (move.to < move.from && r >= move.to && r < move.from) {
        ++r;
      }
    }
    ranks[static_cast<std::size_t>(move.item)] = move.to;
    return;
  }
  if (move.to > move.from) {
    for (int r = move.from + 1; r <= move.to; ++r) {
      const int it = order[static_cast<std::size_t>(r - 1)];
      ranks[static_cast<std::size_t>(it)] = r - 1;
      order[static_cast<std::size_t>(r - 2)] = it;
    }
  } else {
    for (int r = move.from - 1; r >= move.to; --r) {
      const int it = order[static_cast<std::size_t>(r - 1)];
      ranks[static_cast<std::size_t>(it)] = r + 1;
      order[static_cast<std::size_t>(r)] = it;
    }
  }
  ranks[static_cast<std::size_t>(move.item)] = move.to;
  order[static_cast<std::size_t>(move.to - 1)] = move.item;
}

std::vector<int> apply_leap_shift(std::span<const int> ranks, const LeapShiftMove& move) {
  std::vector<int> out(ranks.begin(), ranks.end());
  std::vector<int> no_order;
  apply_leap_shift(out, no_order, move);
  return out;
}

LeapShiftProposal leap_and_shift_propose(const Ranking& rho, int l, Rng& rng) {
  const int m = rho.size();
  LeapShiftProposal p;
  p.move = draw_leap_shift(rho.values(), l, rng);
  p.proposed = Ranking(apply_leap_shift(rho.values(), p.move));
  p.log_forward = leap_shift_log_mass(p.move.from, p.move.to, m, l);
  p.log_backward = leap_shift_log_mass(p.move.to, p.move.from, m, l);
  return p;
}

}  // namespace lowbmm
