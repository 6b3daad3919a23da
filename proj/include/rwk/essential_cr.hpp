#pragma once

/**
 * @file essential_cr.hpp
 * @brief Decreasing chains C_1 ⊇ C_2 ⊇ ... with the shift property
 * C_m ⊆ -x + C_n, and their transport through y -> A y.
 *
 * Chains are finite and every inclusion is checked on a finite window.
 * Chain indices are 1-based.
 */

#include "rwk/errors.hpp"
#include "rwk/set_families.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace rwk {

/// Inclusive window in Z.
struct Interval {
  BigInt lo;
  BigInt hi;
};

template <typename Set>
struct SetTraits;

template <>
struct SetTraits<ZSet> {
  using Point = BigInt;
  using Window = Interval;

  static bool for_each(const Interval& w, const std::function<bool(const BigInt&)>& visit) {
    for (BigInt x = w.lo; x <= w.hi; x += BigInt(1))
      if (!visit(x)) return false;
    return true;
  }
};

template <>
struct SetTraits<ZvSet> {
  using Point = IntVector;
  using Window = Box;

  static bool for_each(const Box& w, const std::function<bool(const IntVector&)>& visit) {
    return for_each_point(w, visit);
  }
};

template <typename Set>
struct CRChain {
  using Point = typename SetTraits<Set>::Point;
  /// Proposed m for (n, x), tried before the linear search.
  using ShiftHint = std::function<std::optional<std::size_t>(std::size_t n, const Point& x)>;

  std::vector<Set> sets;
  ShiftHint shift_hint;

  std::size_t length() const { return sets.size(); }
  const Set& operator[](std::size_t n) const { return sets.at(n - 1); }
};

/// D_n = {y : A y in C_n^u}.
CRChain<ZvSet> chain_preimage(const RatMatrix& a, const CRChain<ZSet>& chain);

/// C_{n+1} ⊆ C_n on the window for every consecutive pair.
template <typename Set>
bool is_decreasing(const CRChain<Set>& chain, const typename SetTraits<Set>::Window& window) {
  for (std::size_t n = 1; n < chain.length(); ++n) {
    const bool ok = SetTraits<Set>::for_each(window, [&](const auto& p) {
      return !contains(chain[n + 1], p) || contains(chain[n], p);
    });
    if (!ok) return false;
  }
  return true;
}

/// Whether x + z lies in C_n for every z of C_m inside the window, i.e.
/// C_m ⊆ -x + C_n there. Throws ContractViolation unless x is in C_n and
/// 1 <= n, m <= length.
template <typename Set>
bool verify_chain_shift(const CRChain<Set>& chain, std::size_t n, const typename SetTraits<Set>::Point& x,
                        std::size_t m, const typename SetTraits<Set>::Window& window);

struct ShiftIndex {
  std::size_t m = 0;                   ///< max of row_indices
  std::vector<BigInt> row_images;      ///< s_i = sum_j a_ij y_j
  std::vector<std::size_t> row_indices;  ///< least m_i with C_{m_i} ⊆ -s_i + C_n on the row window
  bool window_check = false;           ///< D_m ⊆ -y + D_n on the box
};

/// Raised when some row admits no m_i <= m_max.
class ShiftExhausted : public Error {
 public:
  using Error::Error;
};

/// For y in D_n: per-row least m_i, m = max m_i, then the inclusion
/// D_m ⊆ -y + D_n checked on the box. Throws ContractViolation when y is
/// not in D_n.
ShiftIndex find_shift_index(const CRChain<ZvSet>& preimage_chain, const RatMatrix& a,
                            const CRChain<ZSet>& chain, std::size_t n, const IntVector& y,
                            const Interval& row_window, const Box& box, std::size_t m_max);

extern template bool verify_chain_shift<ZSet>(const CRChain<ZSet>&, std::size_t, const BigInt&, std::size_t,
                                              const Interval&);
extern template bool verify_chain_shift<ZvSet>(const CRChain<ZvSet>&, std::size_t, const IntVector&, std::size_t,
                                               const Box&);

}  // namespace rwk
