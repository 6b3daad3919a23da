#pragma once

// Brute-force reference implementations for the tests. Everything here works
// on plain int64 values and shares no code with the library.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Mat = std::vector<std::vector<i64>>;
using Vec = std::vector<i64>;

inline i64 floor_mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// Cofactor expansion; fine for the tiny matrices the tests use.
inline i64 det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  i64 total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 == 0 ? 1 : -1) * m[0][c] * det(minor);
  }
  return total;
}

inline void subsets_of_size(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) chosen.push_back(i);
    visit(chosen);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

/// gcd of all k x k minors (the k-th determinant divisor).
inline i64 determinant_divisor(const Mat& m, std::size_t k) {
  i64 g = 0;
  subsets_of_size(m.size(), k, [&](const std::vector<std::size_t>& rows) {
    subsets_of_size(m[0].size(), k, [&](const std::vector<std::size_t>& cols) {
      Mat sub;
      for (auto r : rows) {
        Vec row;
        for (auto c : cols) row.push_back(m[r][c]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::llabs(det(sub)));
    });
  });
  return g;
}

/// Smith diagonal from determinant divisors: s_k = d_k / d_{k-1}.
inline Vec smith_diagonal(const Mat& m) {
  Vec out;
  i64 prev = 1;
  const std::size_t n = std::min(m.size(), m[0].size());
  for (std::size_t k = 1; k <= n; ++k) {
    const i64 dk = determinant_divisor(m, k);
    if (dk == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(prev == 0 ? 0 : dk / prev);
    prev = dk;
  }
  return out;
}

inline Vec multiply(const Mat& m, const Vec& x) {
  Vec out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) out[r] += m[r][c] * x[c];
  return out;
}

/// Some x in [-bound, bound]^cols with M x = b, scanning in odometer order.
inline std::optional<Vec> box_solve(const Mat& m, const Vec& b, i64 bound) {
  const std::size_t n = m[0].size();
  Vec x(n, -bound);
  for (;;) {
    if (multiply(m, x) == b) return x;
    std::size_t i = 0;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i == n) return std::nullopt;
    ++x[i];
  }
}

/// Whether some d-subset of the window is residue-constant for every row of
/// `values` (values[s][t] is sequence s at window position t).
inline bool has_residue_constant_subset(const Mat& values, i64 d) {
  bool found = false;
  subsets_of_size(values[0].size(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& pick) {
    if (found) return;
    bool ok = true;
    for (const auto& seq : values)
      for (auto t : pick) ok = ok && floor_mod(seq[t], d) == floor_mod(seq[pick[0]], d);
    found = ok;
  });
  return found;
}

struct Witness {
  i64 a;
  std::vector<std::size_t> H;  // 1-based
};

/// Canonical witness by exhaustive enumeration: collect every valid (a, H)
/// with |a| <= a_bound, H a nonempty subset of {1..r}, then take the
/// minimum under (|a|, a, |H|, H lexicographic).
inline std::optional<Witness> canonical_witness(const std::function<bool(i64)>& member, const Mat& family,
                                                i64 a_bound, std::size_t r) {
  std::optional<Witness> best;
  auto key = [](const Witness& w) { return std::make_tuple(std::llabs(w.a), w.a, w.H.size(), w.H); };
  for (i64 a = -a_bound; a <= a_bound; ++a) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
      std::vector<std::size_t> h;
      for (std::size_t t = 0; t < r; ++t)
        if (mask >> t & 1) h.push_back(t + 1);
      bool ok = true;
      for (const auto& f : family) {
        i64 s = a;
        for (auto t : h) s += f[t - 1];
        ok = ok && member(s);
      }
      if (!ok) continue;
      Witness w{a, h};
      if (!best || key(w) < key(*best)) best = w;
    }
  }
  return best;
}

}  // namespace oracle
