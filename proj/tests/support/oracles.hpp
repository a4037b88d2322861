#pragma once

// Brute-force reference computations used as test oracles. Written from the
// definitions with plain loops; they deliberately share no code with the
// library beyond the container types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;

inline std::vector<Perm> all_permutations(int m) {
  Perm p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// All k-subsets of {0..n-1}, each ascending.
inline std::vector<std::vector<int>> all_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.end() - k, mask.end(), 1);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask[static_cast<std::size_t>(i)]) s.push_back(i);
    }
    out.push_back(s);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

inline std::int64_t footrule(const Perm& a, const Perm& b) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

inline std::int64_t kendall(const Perm& a, const Perm& b) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] - a[j]) * (b[i] - b[j]) < 0) ++d;
    }
  }
  return d;
}

inline std::int64_t max_footrule(int m) {
  std::int64_t best = 0;
  const Perm id = all_permutations(m).front();
  for (const auto& p : all_permutations(m)) best = std::max(best, footrule(id, p));
  return best;
}

// Ranks of the members of `subset` (ascending item indices) among themselves.
inline Perm restrict_ranks(const Perm& full, const std::vector<int>& subset) {
  Perm out(subset.size());
  for (std::size_t a = 0; a < subset.size(); ++a) {
    int r = 1;
    for (std::size_t b = 0; b < subset.size(); ++b) {
      if (full[static_cast<std::size_t>(subset[b])] < full[static_cast<std::size_t>(subset[a])]) ++r;
    }
    out[a] = r;
  }
  return out;
}

// Exact Mallows(rho, alpha) probabilities with footrule, keyed by permutation.
inline std::map<Perm, double> mallows_exact(const Perm& rho, double alpha) {
  const int m = static_cast<int>(rho.size());
  std::map<Perm, double> out;
  double z = 0.0;
  for (const auto& p : all_permutations(m)) {
    const double w = std::exp(-alpha / m * static_cast<double>(footrule(p, rho)));
    out[p] = w;
    z += w;
  }
  for (auto& [p, w] : out) w /= z;
  return out;
}

// Exact leap-and-shift proposal distribution from `rho`: choose an item
// uniformly, then a target rank uniformly among the ranks within l of its
// current rank (excluding it), shifting the items in between.
inline std::map<Perm, double> leap_shift_exact(const Perm& rho, int l) {
  const int m = static_cast<int>(rho.size());
  std::map<Perm, double> out;
  for (int item = 0; item < m; ++item) {
    const int from = rho[static_cast<std::size_t>(item)];
    std::vector<int> targets;
    for (int r = std::max(1, from - l); r <= std::min(m, from + l); ++r) {
      if (r != from) targets.push_back(r);
    }
    for (int to : targets) {
      Perm p = rho;
      for (int k = 0; k < m; ++k) {
        const int r = rho[static_cast<std::size_t>(k)];
        if (k == item) {
          p[static_cast<std::size_t>(k)] = to;
        } else if (to > from && r > from && r <= to) {
          p[static_cast<std::size_t>(k)] = r - 1;
        } else if (to < from && r >= to && r < from) {
          p[static_cast<std::size_t>(k)] = r + 1;
        }
      }
      out[p] += 1.0 / m / static_cast<double>(targets.size());
    }
  }
  return out;
}

// Joint state of the variable-selection posterior: (ascending subset, ranks
// aligned with it).
struct JointState {
  std::vector<int> items;
  Perm ranks;
  auto operator<=>(const JointState&) const = default;
};

// Normalized posterior over all (A*, rho) for row-major data `ranks`
// (N rows of n ranks), proportional to exp(-alpha/n* * sum_j d(R_j|A*, rho)).
inline std::map<JointState, double> lowbmm_posterior_exact(const std::vector<Perm>& data, int n,
                                                           int n_star, double alpha) {
  std::map<JointState, double> out;
  double z = 0.0;
  for (const auto& subset : all_subsets(n, n_star)) {
    for (const auto& rho : all_permutations(n_star)) {
      std::int64_t d = 0;
      for (const auto& row : data) d += footrule(restrict_ranks(row, subset), rho);
      const double w = std::exp(-alpha / n_star * static_cast<double>(d));
      out[JointState{subset, rho}] = w;
      z += w;
    }
  }
  for (auto& [s, w] : out) w /= z;
  return out;
}

template <typename K>
double total_variation(const std::map<K, double>& p, const std::map<K, double>& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.count(k)) tv += std::abs(v);
  }
  return tv / 2.0;
}

// Linear interpolation of the crossing of a decreasing curve with `target`,
// written independently for cross-checking.
inline double interpolate_crossing(double x0, double y0, double x1, double y1, double target) {
  return x0 + (y0 - target) * (x1 - x0) / (y0 - y1);
}

}  // namespace oracle
