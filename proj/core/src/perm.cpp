#include "lowbmm/perm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lowbmm/error.hpp"

namespace lowbmm {

bool is_permutation(std::span<const int> ranks) {
  const auto m = ranks.size();
  std::vector<char> seen(m + 1, 0);
  for (int r : ranks) {
    if (r < 1 || static_cast<std::size_t>(r) > m || seen[static_cast<std::size_t>(r)]) {
      return false;
    }
    seen[static_cast<std::size_t>(r)] = 1;
  }
  return true;
}

Ranking::Ranking(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  if (!is_permutation(ranks_)) {
    throw DataError("ranking of length " + std::to_string(ranks_.size()) +
                    " is not a permutation of 1..n");
  }
}

Ranking Ranking::identity(int m) {
  std::vector<int> r(static_cast<std::size_t>(m));
  std::iota(r.begin(), r.end(), 1);
  Ranking out;
  out.ranks_ = std::move(r);
  return out;
}

std::vector<int> Ranking::order() const {
  std::vector<int> out(ranks_.size());
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    out[static_cast<std::size_t>(ranks_[i] - 1)] = static_cast<int>(i);
  }
  return out;
}

ItemSet::ItemSet(std::vector<int> members, int universe)
    : members_(std::move(members)), universe_(universe) {
  if (universe_ < 0) throw IndexError("item universe must be non-negative");
  std::vector<char> seen(static_cast<std::size_t>(universe_), 0);
  for (int item : members_) {
    if (item < 0 || item >= universe_) {
      throw IndexError("item index " + std::to_string(item) + " outside universe of size " +
                       std::to_string(universe_));
    }
    if (seen[static_cast<std::size_t>(item)]) {
      throw IndexError("duplicate item index " + std::to_string(item));
    }
    seen[static_cast<std::size_t>(item)] = 1;
  }
}

bool ItemSet::contains(int item) const { return position(item) >= 0; }

int ItemSet::position(int item) const {
  auto it = std::find(members_.begin(), members_.end(), item);
  return it == members_.end() ? -1 : static_cast<int>(it - members_.begin());
}

std::vector<int> ItemSet::sorted() const {
  std::vector<int> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ItemSet::complement() const {
  std::vector<char> in(static_cast<std::size_t>(universe_), 0);
  for (int item : members_) in[static_cast<std::size_t>(item)] = 1;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(universe_) - members_.size());
  for (int i = 0; i < universe_; ++i) {
    if (!in[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

std::vector<int> ItemSet::order_by(const Ranking& ranks) const {
  if (ranks.size() != size()) {
    throw DimensionError("ranking dimension " + std::to_string(ranks.size()) +
                         " differs from item set size " + std::to_string(size()));
  }
  std::vector<int> out(members_.size());
  for (int k = 0; k < size(); ++k) out[static_cast<std::size_t>(ranks[k] - 1)] = members_[static_cast<std::size_t>(k)];
  return out;
}

std::int64_t footrule(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw DimensionError("footrule: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

namespace {

std::int64_t count_inversions(std::vector<int>& v, std::vector<int>& buf, std::size_t lo,
                              std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

std::int64_t kendall(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw DimensionError("kendall: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  // Order items by a (ties by b so tied pairs are never counted), then count
  // inversions in the b sequence.
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return a[x] != a[y] ? a[x] < a[y] : b[x] < b[y];
  });
  std::vector<int> seq(a.size());
  for (std::size_t k = 0; k < idx.size(); ++k) seq[k] = b[idx[k]];
  std::vector<int> buf(seq.size());
  // Strict inversions only, so equal b values are not discordant either.
  return count_inversions(seq, buf, 0, seq.size());
}

namespace {

template <typename T>
Ranking rank_vector_impl(std::span<const T> scores) {
  std::vector<int> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return scores[static_cast<std::size_t>(x)] < scores[static_cast<std::size_t>(y)];
  });
  std::vector<int> ranks(scores.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    ranks[static_cast<std::size_t>(idx[k])] = static_cast<int>(k) + 1;
  }
  return Ranking(std::move(ranks));
}

}  // namespace

Ranking rank_vector(std::span<const double> scores) {
  for (double x : scores) {
    if (!std::isfinite(x)) throw DataError("rank_vector: non-finite score");
  }
  return rank_vector_impl(scores);
}

Ranking rank_vector(std::span<const int> scores) { return rank_vector_impl(scores); }

std::vector<int> rank_vector_with_ties(std::span<const double> scores) {
  std::vector<int> out(scores.size(), 0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    for (double x : scores) out[i] += (scores[i] - x >= 0.0) ? 1 : 0;
  }
  return out;
}

Ranking restrict_to(const Ranking& r, const ItemSet& s) {
  if (s.universe() != r.size()) {
    throw IndexError("restrict: item set universe " + std::to_string(s.universe()) +
                     " does not match ranking dimension " + std::to_string(r.size()));
  }
  std::vector<int> sub(static_cast<std::size_t>(s.size()));
  for (int k = 0; k < s.size(); ++k) sub[static_cast<std::size_t>(k)] = r[s[k]];
  return rank_vector(std::span<const int>(sub));
}

std::int64_t max_footrule(int m) {
  if (m < 1) throw ConfigError("max_footrule: dimension must be at least 1");
  const auto mm = static_cast<std::int64_t>(m);
  return mm * mm / 2;
}

}  // namespace lowbmm
