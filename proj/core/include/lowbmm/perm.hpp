#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lowbmm {

// A complete ranking of m items: ranks()[i] is the rank of item i, with 1 the
// most preferred. Always a permutation of {1, ..., m}.
class Ranking {
 public:
  Ranking() = default;

  // Throws DataError unless `ranks` is a permutation of {1, ..., size}.
  explicit Ranking(std::vector<int> ranks);

  static Ranking identity(int m);

  int size() const noexcept { return static_cast<int>(ranks_.size()); }
  int operator[](int item) const { return ranks_[static_cast<std::size_t>(item)]; }
  std::span<const int> values() const noexcept { return ranks_; }
  const std::vector<int>& vector() const noexcept { return ranks_; }

  // Items ordered from rank 1 to rank m.
  std::vector<int> order() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<int> ranks_;
};

// A set of distinct item indices drawn from a universe {0, ..., universe-1}.
// Member order is preserved; rankings over a set are aligned with it.
class ItemSet {
 public:
  ItemSet() = default;

  // Throws IndexError on duplicates or out-of-universe members.
  ItemSet(std::vector<int> members, int universe);

  int size() const noexcept { return static_cast<int>(members_.size()); }
  int universe() const noexcept { return universe_; }
  int operator[](int k) const { return members_[static_cast<std::size_t>(k)]; }
  std::span<const int> members() const noexcept { return members_; }
  const std::vector<int>& vector() const noexcept { return members_; }

  bool contains(int item) const;
  // Position of `item` in the member list, or -1.
  int position(int item) const;

  // Members sorted ascending (set identity independent of order).
  std::vector<int> sorted() const;
  // Universe items not in the set, ascending.
  std::vector<int> complement() const;
  // Members listed from rank 1 upward under `ranks` (aligned with members).
  std::vector<int> order_by(const Ranking& ranks) const;

  friend bool operator==(const ItemSet&, const ItemSet&) = default;

 private:
  std::vector<int> members_;
  int universe_ = 0;
};

bool is_permutation(std::span<const int> ranks);

// Sum of |a_i - b_i|.
std::int64_t footrule(std::span<const int> a, std::span<const int> b);
inline std::int64_t footrule(const Ranking& a, const Ranking& b) {
  return footrule(a.values(), b.values());
}

// Number of discordant pairs. O(m log m) via merge-sort inversion count.
std::int64_t kendall(std::span<const int> a, std::span<const int> b);
inline std::int64_t kendall(const Ranking& a, const Ranking& b) {
  return kendall(a.values(), b.values());
}

// Rank vector of real scores: the smallest value gets rank 1, ties broken by
// ascending index so the result is always a permutation.
Ranking rank_vector(std::span<const double> scores);
Ranking rank_vector(std::span<const int> scores);

// The literal counting form r_i = #{j : x_j <= x_i}; ties share the largest
// rank and the result need not be a permutation.
std::vector<int> rank_vector_with_ties(std::span<const double> scores);

// The permutation of {1, ..., |s|} induced by `r` on the members of `s`,
// aligned with the member order of `s`.
Ranking restrict_to(const Ranking& r, const ItemSet& s);

// Largest footrule distance between two permutations of size m: floor(m^2/2).
std::int64_t max_footrule(int m);

}  // namespace lowbmm
