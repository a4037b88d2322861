#pragma once

#include <span>
#include <vector>

#include "lowbmm/perm.hpp"
#include "lowbmm/random.hpp"

namespace lowbmm {

// One leap-and-shift move: the item at index `item` leaps from rank `from` to
// rank `to`, and every item ranked strictly between the two shifts by one
// toward the vacated rank.
struct LeapShiftMove {
  int item = 0;
  int from = 0;
  int to = 0;
};

struct LeapShiftProposal {
  Ranking proposed;
  LeapShiftMove move;
  double log_forward = 0.0;   // log P_l(proposed | current)
  double log_backward = 0.0;  // log P_l(current | proposed)
};

// Number of ranks reachable by a leap from `rank` in dimension m with leap
// size l: |{max(1, rank-l), ..., min(m, rank+l)} \ {rank}|.
int leap_support_size(int rank, int m, int l);

// Log proposal mass of the move rank a -> rank b in dimension m. When
// |a - b| == 1 the result is an adjacent transposition, which is generated
// both by the leaping item and by its neighbour leaping the other way.
double leap_shift_log_mass(int a, int b, int m, int l);

// log P_l(current | proposed) - log P_l(proposed | current).
inline double leap_shift_log_ratio(int a, int b, int m, int l) {
  return leap_shift_log_mass(b, a, m, l) - leap_shift_log_mass(a, b, m, l);
}

// Draws a move for ranks `ranks` (a permutation of 1..m, m >= 2) without
// modifying them.
LeapShiftMove draw_leap_shift(std::span<const int> ranks, int l, Rng& rng);

// Applies `move` in place. `order` (rank-1 -> item) is updated alongside when
// non-empty.
void apply_leap_shift(std::vector<int>& ranks, std::vector<int>& order, const LeapShiftMove& move);

// Applies `move` to a ranking, returning the shifted copy.
std::vector<int> apply_leap_shift(std::span<const int> ranks, const LeapShiftMove& move);

LeapShiftProposal leap_and_shift_propose(const Ranking& rho, int l, Rng& rng);

}  // namespace lowbmm
